#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "gravdec/distinguish.hpp"
#include "gravdec/ensemble.hpp"

using namespace gravdec;

namespace {

const PhysicalConstants kSI{};
const Scenario kScenario{1e-6, {}};

std::vector<DisplacedThermal> random_modes(int n) {
    std::mt19937_64 rng(1);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    std::vector<DisplacedThermal> modes;
    modes.reserve(n);
    for (int i = 0; i < n; ++i)
        modes.push_back({uni(1e11, 5e11), uni(0.0, 5.0), {1.0, 0.0}});
    return modes;
}

void BM_gamma_fraction(benchmark::State& state) {
    const auto modes = random_modes(static_cast<int>(state.range(0)));
    double t = 1e9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_gamma_fraction(modes, t, kScenario));
        t += 1e5;  // defeat caching without changing the workload
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_gamma_fraction)->Arg(100)->Arg(1000)->Arg(10000);

void BM_fidelity_macrofraction(benchmark::State& state) {
    const auto modes = random_modes(static_cast<int>(state.range(0)));
    double t = 1e9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            log_fidelity_macrofraction(modes, t, kScenario));
        t += 1e5;
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_fidelity_macrofraction)->Arg(100)->Arg(1000)->Arg(10000);

void BM_to_fock(benchmark::State& state) {
    const DisplacedThermal s{2e11, static_cast<double>(state.range(0)),
                             {1.0, 0.0}};
    for (auto _ : state) benchmark::DoNotOptimize(to_fock(s));
}
BENCHMARK(BM_to_fock)->Arg(0)->Arg(2)->Arg(10);

void BM_fidelity_oracle(benchmark::State& state) {
    const FockMatrix rho =
        to_fock({2e11, static_cast<double>(state.range(0)), {1.0, 0.0}});
    double dphi = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(fidelity_oracle(rho, dphi));
        dphi += 1e-3;
    }
}
BENCHMARK(BM_fidelity_oracle)->Arg(0)->Arg(2)->Arg(10);

void BM_run_sweep(benchmark::State& state) {
    StateTemplate tmpl;
    tmpl.alpha = {1.0, 0.0};
    tmpl.temperature = 10.0;
    const auto p =
        sample_partition(FrequencyDistribution::uniform(1e11, 5e11),
                         static_cast<int>(state.range(0)),
                         static_cast<int>(state.range(0)), 1, tmpl, 1, kSI);
    const double tdst =
        distinguishability_time(sum_qfi(p, 0, kSI), kScenario);
    const TimeGrid grid{TimeGrid::Kind::Linear, 0.0, 5.0 * tdst, 200};
    const auto ts = grid.times();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sweep(p, kScenario, ts));
}
BENCHMARK(BM_run_sweep)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
