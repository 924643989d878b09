#include <benchmark/benchmark.h>

#include <complex>

#include "linerkit/bessel.hpp"
#include "linerkit/duct.hpp"
#include "linerkit/impedance.hpp"
#include "linerkit/mesh.hpp"
#include "linerkit/stokes.hpp"

using namespace linerkit;

namespace {

const GasParameters kGas;
const LinerGeometry kGeom;
const DuctGeometry kDuct;

MeshOptions mesh_options(double target_h, double f_hz) {
    MeshOptions opts;
    opts.target_h = target_h;
    opts.bl_layers = 3;
    opts.omega = 2.0 * kPi * f_hz;
    opts.nu = kGas.nu;
    return opts;
}

void BesselJ0Complex(benchmark::State& state) {
    std::complex<double> z(0.3, 0.01);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bessel::cyl_j0(z));
        z += std::complex<double>(0.37, 0.002);  // walk through both regimes
        if (z.real() > 28.0) z = {0.3, 0.01};
    }
}
BENCHMARK(BesselJ0Complex);

void LinedModeSpectrum(benchmark::State& state) {
    const double omega = 2.0 * kPi * 900.0;
    const std::complex<double> beta(7.0, 21.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(lined_modes(kDuct.R_d, omega, kGas.c, beta,
                                             static_cast<int>(state.range(0))));
}
BENCHMARK(LinedModeSpectrum)->Arg(5)->Arg(8);

void ModeMatchScattering(benchmark::State& state) {
    const ImpedanceModel model =
        ImpedanceModel::guess(EndCorrection::morse(), kGeom, kGas, "morse");
    const double f = 700.0;
    const std::complex<double> beta = model.admittance(f).beta;
    DuctGeometry duct = kDuct;
    duct.N_modes = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(mode_match(duct, 2.0 * kPi * f, kGas.c, beta));
}
BENCHMARK(ModeMatchScattering)->Arg(5)->Arg(8);

void GuessImpedanceSweep(benchmark::State& state) {
    const ImpedanceModel model =
        ImpedanceModel::guess(EndCorrection::morse(), kGeom, kGas, "morse");
    for (auto _ : state) {
        double acc = 0.0;
        for (double f = 100.0; f <= 1600.0; f += 1.0) acc += model.zeta(f).zeta.real();
        benchmark::DoNotOptimize(acc);
    }
}
BENCHMARK(GuessImpedanceSweep);

void ApertureMeshBuild(benchmark::State& state) {
    const ApertureDomain domain{1e-3, 1e-3, 40.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(build_aperture_mesh(domain, mesh_options(0.1e-3, 1000.0)));
}
BENCHMARK(ApertureMeshBuild);

void StokesApertureSolve(benchmark::State& state) {
    const ApertureDomain domain{1e-3, 1e-3, static_cast<double>(state.range(0))};
    const MeridianMesh mesh = build_aperture_mesh(domain, mesh_options(0.15e-3, 1000.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_aperture(mesh, kGas, 2.0 * kPi * 1000.0));
    state.counters["vertices"] = static_cast<double>(mesh.vertex_count());
}
BENCHMARK(StokesApertureSolve)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
