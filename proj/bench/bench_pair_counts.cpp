// Serial reference against the OpenMP kernel for pair counting on constructed designs.

#include <benchmark/benchmark.h>

#include "bsa/construct.hpp"
#include "bsa/verifier.hpp"

#include <map>
#include <tuple>

namespace {

struct Input {
    int n;
    std::vector<bsa::IntBlock> blocks;
};

const Input& input(int r, int c, int lambda) {
    static std::map<std::tuple<int, int, int>, Input> cache;
    auto key = std::make_tuple(r, c, lambda);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto d = bsa::construct_2bsec(r, c, lambda);
        it = cache.emplace(key, Input{r * c, bsa::to_int_blocks(d)}).first;
    }
    return it->second;
}

void serial(benchmark::State& st) {
    const auto& in = input(int(st.range(0)), int(st.range(1)), int(st.range(2)));
    for (auto _ : st) benchmark::DoNotOptimize(bsa::pair_counts_serial(in.n, in.blocks, 3));
    st.SetItemsProcessed(st.iterations() * std::int64_t(in.blocks.size()));
}

void parallel(benchmark::State& st) {
    const auto& in = input(int(st.range(0)), int(st.range(1)), int(st.range(2)));
    for (auto _ : st) benchmark::DoNotOptimize(bsa::pair_counts_parallel(in.n, in.blocks, 3));
    st.SetItemsProcessed(st.iterations() * std::int64_t(in.blocks.size()));
}

void shapes(benchmark::internal::Benchmark* b) {
    b->Args({6, 6, 2})->Args({7, 10, 6})->Args({3, 21, 2})->Args({5, 16, 2});
}

} // namespace

BENCHMARK(serial)->Apply(shapes);
BENCHMARK(parallel)->Apply(shapes);

BENCHMARK_MAIN();
