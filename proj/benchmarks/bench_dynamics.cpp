#include <benchmark/benchmark.h>

#include "sedh/dynamics.hpp"

namespace {

void BM_Rk4StepNoField(benchmark::State& state) {
    auto params = sedh::PhysicalParams::make(3.0, 1.0 / 137.036);
    sedh::Toggles tg;
    tg.noise = false;
    sedh::ElectronState st{{1, 0, 0}, {0, 1, 0}, {0, 0, sedh::spin_magnitude}, 0.0};
    double h = 2.0 * 3.14159265358979 / 4000.0;
    for (auto _ : state) {
        st = sedh::rk4_step(st, [](const sedh::Vec3&, double) { return sedh::FieldSample{}; },
                            params, tg, h);
        benchmark::DoNotOptimize(st);
    }
}
BENCHMARK(BM_Rk4StepNoField);

void BM_TrajectorySegment(benchmark::State& state) {
    sedh::RunConfig cfg;
    cfg.grid_n = 2000;
    cfg.omega_max = 10.0;
    cfg.t_end = 50.0;
    cfg.seed = 11;
    for (auto _ : state) {
        sedh::Trajectory traj(cfg);
        traj.init();
        traj.run();
        benchmark::DoNotOptimize(traj.summary().steps);
    }
}
BENCHMARK(BM_TrajectorySegment)->Unit(benchmark::kMillisecond);

}  // namespace
