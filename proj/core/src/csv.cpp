#include "linerkit/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "linerkit/types.hpp"

namespace linerkit::csv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

void write(const std::filesystem::path& path, const Table& table) {
    std::ofstream out(path);
    if (!out) throw Error("csv: cannot open " + path.string() + " for writing");
    auto emit_row = [&out](const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out << ',';
            out << fields[i];
        }
        out << '\n';
    };
    emit_row(table.header);
    for (const auto& row : table.rows) emit_row(row);
    if (!out) throw Error("csv: write failed for " + path.string());
}

Table read(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("csv: cannot open " + path.string());
    Table table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    return table;
}

double parse_double(const std::string& field) {
    double v = 0.0;
    const char* begin = field.data();
    const char* end = begin + field.size();
    while (begin != end && *begin == ' ') ++begin;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw Error("csv: cannot parse number from '" + field + "'");
    return v;
}

}  // namespace linerkit::csv
