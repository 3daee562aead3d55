// Microbenchmarks for the hot paths: special functions, velocity-field
// evaluation, trajectory integration, and barrier dwell times.

#include "qtraj/analysis.hpp"
#include "qtraj/constants.hpp"
#include "qtraj/integrator.hpp"
#include "qtraj/specfun.hpp"
#include "qtraj/tunneling.hpp"

#include <benchmark/benchmark.h>
#include <cmath>

namespace {

using namespace qtraj;
using specfun::airy_pair;
using specfun::dawson;

const double kG = 1e-9 * constants::newton_in_ev_per_angstrom;

void bm_airy_pair(benchmark::State& state) {
    double y = -25.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(airy_pair(y));
        y += 0.01;
        if (y > 8.0) y = -25.0;
    }
}
BENCHMARK(bm_airy_pair);

void bm_dawson(benchmark::State& state) {
    double u = -8.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dawson(u));
        u += 0.005;
        if (u > 8.0) u = -8.0;
    }
}
BENCHMARK(bm_dawson);

void bm_velocity_field(benchmark::State& state) {
    const Scenario sc = make_linear(10.0, kG);
    const BasisPair pair = build_basis(sc);
    const Microstate ms{3.0, 2.0, 0.0, +1};
    double x = 4.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(velocity_field(x, sc, pair, ms));
        x += 0.001;
        if (x > 15.0) x = 4.0;
    }
}
BENCHMARK(bm_velocity_field);

void bm_integrate_constant(benchmark::State& state) {
    const Scenario sc = make_constant(10.0, 0.0);
    const BasisPair pair = build_basis(sc);
    const Microstate ms{10.0, 0.0, 0.0, +1};
    const double t_end = constants::pi * sc.hbar() / 4.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            integrate_trajectory(sc, pair, ms, 0.0, 0.0, t_end));
}
BENCHMARK(bm_integrate_constant);

void bm_integrate_harmonic(benchmark::State& state) {
    const Scenario sc = make_harmonic_ground(10.0);
    const BasisPair pair = build_basis(sc);
    const Microstate ms{8e9, 1.0, 0.0, +1};
    const double x_m0 = sc.hbar() / std::sqrt(2.0 * sc.mass * 10.0);
    const double t_end = 1.1 * constants::pi * sc.hbar() / 20.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            integrate_trajectory(sc, pair, ms, -x_m0, 0.0, t_end));
}
BENCHMARK(bm_integrate_harmonic);

void bm_dwell_time(benchmark::State& state) {
    const BarrierSpec spec = make_barrier(20.0, 10.0, 10.0);
    double x = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dwell_time(spec, x));
        x += 0.01;
        if (x > spec.q) x = 0.0;
    }
}
BENCHMARK(bm_dwell_time);

void bm_find_nodes(benchmark::State& state) {
    const Scenario sc = make_constant(10.0, 0.0);
    const BasisPair pair = build_basis(sc);
    for (auto _ : state)
        benchmark::DoNotOptimize(find_nodes(sc, pair, -5.0, 5.0));
}
BENCHMARK(bm_find_nodes);

} // namespace

BENCHMARK_MAIN();
