// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <array>

#include "ghz/kernels.hpp"

using namespace ghz;

namespace {

const std::array<PhaseAngle, 6> kAngles{PhaseAngle(0.1), PhaseAngle(0.7), PhaseAngle(1.3),
                                        PhaseAngle(2.9), PhaseAngle(4.2), PhaseAngle(5.5)};

Model model_for(int index) {
    switch (index) {
        case 0: return Model::tri();
        case 1: return Model::quad();
        case 2: return Model::general(6, 3);
        default: return Model::single_cbox(5);
    }
}

template <auto Kernel>
void BM_simulate(benchmark::State& state) {
    const Model m = model_for(static_cast<int>(state.range(0)));
    const auto trials = static_cast<std::uint64_t>(state.range(1));
    const auto angles = std::span(kAngles).first(m.angle_count());
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(m, angles, trials, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
    state.SetLabel(std::string(to_string(m.id)));
}

template <auto Kernel>
void BM_comm_cost(benchmark::State& state) {
    const auto model = state.range(0) == 0 ? CostModel::m_box : CostModel::tri_comm;
    const auto trials = static_cast<std::uint64_t>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(Kernel(model, trials, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(trials));
    state.SetLabel(std::string(to_string(model)));
}

void simulate_args(benchmark::internal::Benchmark* b) {
    for (int m = 0; m < 4; ++m) b->Args({m, 200000});
    b->Unit(benchmark::kMillisecond)->UseRealTime();
}

void cost_args(benchmark::internal::Benchmark* b) {
    b->Args({0, 200000})->Args({1, 200000})->Unit(benchmark::kMillisecond)->UseRealTime();
}

}  // namespace

BENCHMARK(BM_simulate<simulate_serial>)->Name("simulate/serial")->Apply(simulate_args);
BENCHMARK(BM_simulate<simulate_parallel>)->Name("simulate/parallel")->Apply(simulate_args);
BENCHMARK(BM_comm_cost<comm_cost_serial>)->Name("comm_cost/serial")->Apply(cost_args);
BENCHMARK(BM_comm_cost<comm_cost_parallel>)->Name("comm_cost/parallel")->Apply(cost_args);

BENCHMARK_MAIN();
