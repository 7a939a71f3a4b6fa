#include <benchmark/benchmark.h>

#include <cmath>

#include "dfr/dataset.hpp"
#include "dfr/dynamics.hpp"
#include "dfr/linalg.hpp"
#include "dfr/masking.hpp"
#include "dfr/pipeline.hpp"
#include "dfr/representations.hpp"

using namespace dfr;

namespace {

std::vector<linalg::Vector> fixed_series(std::size_t n_vars, std::size_t t_len) {
    std::vector<linalg::Vector> s(n_vars, linalg::Vector(t_len));
    for (std::size_t c = 0; c < n_vars; ++c)
        for (std::size_t t = 0; t < t_len; ++t)
            s[c][t] = std::sin(0.1 * double(t) + double(c));
    return s;
}

dynamics::Trajectory fixed_trajectory(unsigned m, std::size_t t_len) {
    std::vector<uint8_t> init(m, 0);
    init.back() = 1;
    auto mask = masking::mask_matrix(masking::PrimitivePolynomial::default_for_degree(m),
                                     init, 5);
    dynamics::DfrParams params(0.03, 1.0, 0.25, 2, mask.n_nodes());
    return dynamics::run(fixed_series(5, t_len), mask, params);
}

void BM_reservoir_run(benchmark::State& state) {
    const unsigned m = static_cast<unsigned>(state.range(0));
    std::vector<uint8_t> init(m, 0);
    init.back() = 1;
    auto mask = masking::mask_matrix(masking::PrimitivePolynomial::default_for_degree(m),
                                     init, 5);
    dynamics::DfrParams params(0.03, 1.0, 0.25, 2, mask.n_nodes());
    auto series = fixed_series(5, 50);
    for (auto _ : state)
        benchmark::DoNotOptimize(dynamics::run(series, mask, params));
}
BENCHMARK(BM_reservoir_run)->Arg(3)->Arg(4)->Arg(5)->Arg(6);

void BM_dprr(benchmark::State& state) {
    auto traj = fixed_trajectory(static_cast<unsigned>(state.range(0)), 50);
    for (auto _ : state)
        benchmark::DoNotOptimize(representations::dprr(traj));
}
BENCHMARK(BM_dprr)->Arg(5)->Arg(6);

void BM_rms(benchmark::State& state) {
    auto traj = fixed_trajectory(static_cast<unsigned>(state.range(0)), 50);
    for (auto _ : state)
        benchmark::DoNotOptimize(representations::rms(traj, 1.0));
}
BENCHMARK(BM_rms)->Arg(5)->Arg(6);

void BM_ridge_solve(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    linalg::Matrix a(4, n * 2), b(n, n * 2);
    for (std::size_t i = 0; i < a.data().size(); ++i) a.data()[i] = std::sin(double(i));
    for (std::size_t i = 0; i < b.data().size(); ++i) b.data()[i] = std::cos(double(i));
    for (auto _ : state)
        benchmark::DoNotOptimize(linalg::ridge_solve(a, b, 1.0));
}
BENCHMARK(BM_ridge_solve)->Arg(16)->Arg(37)->Arg(64);

void BM_fit_synthetic(benchmark::State& state) {
    dataset::SynthSpec spec;
    spec.seed = 1;
    auto ds = dataset::synth(spec);
    pipeline::ExperimentConfig cfg;
    cfg.m = static_cast<unsigned>(state.range(0));
    cfg.beta = 1e-6;
    for (auto _ : state)
        benchmark::DoNotOptimize(pipeline::fit(ds, cfg));
}
BENCHMARK(BM_fit_synthetic)->Arg(3)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
