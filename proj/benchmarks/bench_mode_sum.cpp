#include <benchmark/benchmark.h>

#include "sedh/field.hpp"
#include "sedh/sampler.hpp"

namespace {

// Cost of one coarse coefficient sample as a function of admitted modes.
// The per-iteration time should scale linearly with the range argument.
void BM_CoefficientSample(benchmark::State& state) {
    auto n_modes = static_cast<std::size_t>(state.range(0));
    sedh::ModeBank bank(42, 1e4, n_modes, 4.79e-4);
    bank.update_window(bank.omega_max() / 2.5, 2.5);
    bank.materialize(n_modes);
    sedh::CoefficientSampler sampler(bank, 27.0);
    sampler.start_segment(0.0, sampler.segment_delta(1.0));
    double t = 0.0;
    for (auto _ : state) {
        t += sampler.delta();
        sampler.extend_to(t);
        benchmark::DoNotOptimize(sampler.interpolate(t));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n_modes));
}
BENCHMARK(BM_CoefficientSample)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_DirectFieldEval(benchmark::State& state) {
    auto n_modes = static_cast<std::size_t>(state.range(0));
    sedh::ModeBank bank(42, 1e4, n_modes, 4.79e-4);
    bank.update_window(bank.omega_max() / 2.5, 2.5);
    bank.materialize(n_modes);
    double t = 0.0;
    for (auto _ : state) {
        t += 0.01;
        benchmark::DoNotOptimize(sedh::electric_field(bank, {0.5, 0.2, -0.1}, t, 0.0219));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n_modes));
}
BENCHMARK(BM_DirectFieldEval)->Arg(1000)->Arg(10000);

void BM_BankMaterialize(benchmark::State& state) {
    auto n_modes = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        sedh::ModeBank bank(7, 1e4, n_modes, 4.79e-4);
        bank.materialize(n_modes);
        benchmark::DoNotOptimize(bank.a(1, 0));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n_modes));
}
BENCHMARK(BM_BankMaterialize)->Arg(10000)->Arg(100000);

}  // namespace
