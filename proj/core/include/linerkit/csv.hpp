#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace linerkit::csv {

/// Locale-independent numeric formatting: 9 significant digits, '.' decimal.
std::string format_double(double v);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const;  // -1 if absent
};

void write(const std::filesystem::path& path, const Table& table);
Table read(const std::filesystem::path& path);

double parse_double(const std::string& field);

}  // namespace linerkit::csv
