#include <benchmark/benchmark.h>

#include <random>

#include "netid/kernels.hpp"
#include "netid/pipeline.hpp"
#include "netid/synth.hpp"

using namespace netid;

namespace {

Matrix random_matrix(Index rows, Index cols)
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix a(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i)
            a(i, j) = n(rng);
    return a;
}

GeneratorSpec spec_for(Index scenarios)
{
    const FlowNetwork net = random_network(10, 20, 4, 7);
    GeneratorSpec spec;
    spec.network = net;
    spec.independent_edges = default_independent_edges(net);
    const Index q = static_cast<Index>(spec.independent_edges.size());
    spec.base_values = Vector::Constant(q, 10.0);
    spec.fluctuation_sd = Vector::Constant(q, 10.0);
    spec.noise.sde = Vector::Constant(net.edge_count(), 0.1);
    spec.scenarios = scenarios;
    spec.seed = 3;
    return spec;
}

std::vector<DataMatrix> batch_of(int count)
{
    std::vector<DataMatrix> out;
    GeneratorSpec spec = spec_for(400);
    for (int k = 0; k < count; ++k) {
        spec.seed = static_cast<std::uint64_t>(k + 1);
        out.push_back(generate_serial(spec));
    }
    return out;
}

void BM_RowCompressSerial(benchmark::State& state)
{
    const Matrix x = random_matrix(20, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::row_compress_serial(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_RowCompress(benchmark::State& state)
{
    const Matrix x = random_matrix(20, state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::row_compress(x));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_GenerateSerial(benchmark::State& state)
{
    const GeneratorSpec spec = spec_for(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_serial(spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Generate(benchmark::State& state)
{
    const GeneratorSpec spec = spec_for(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(generate(spec));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IdentifyBatchSerial(benchmark::State& state)
{
    const auto batch = batch_of(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(identify_batch_serial(batch));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_IdentifyBatch(benchmark::State& state)
{
    const auto batch = batch_of(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(identify_batch(batch));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

} // namespace

BENCHMARK(BM_RowCompressSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(BM_RowCompress)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(BM_GenerateSerial)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(BM_Generate)->RangeMultiplier(8)->Range(1 << 10, 1 << 19)->UseRealTime();
BENCHMARK(BM_IdentifyBatchSerial)->Arg(16)->Arg(128)->UseRealTime();
BENCHMARK(BM_IdentifyBatch)->Arg(16)->Arg(128)->UseRealTime();

BENCHMARK_MAIN();
