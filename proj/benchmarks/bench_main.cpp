#include <nnprod/cone_maps.hpp>
#include <nnprod/corpus.hpp>
#include <nnprod/infinite_words.hpp>
#include <nnprod/spectral.hpp>
#include <nnprod/structure.hpp>
#include <nnprod/word_dynamics.hpp>

#include <benchmark/benchmark.h>

using namespace nnprod;

static void BM_Eigendecompose(benchmark::State& state) {
    const auto c = example_collection(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(c[0]));
}
BENCHMARK(BM_Eigendecompose)->Arg(2)->Arg(5);

static void BM_CommonEigenvectors(benchmark::State& state) {
    const auto c = example_collection(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(common_eigenvectors(c));
}
BENCHMARK(BM_CommonEigenvectors)->Arg(2)->Arg(4)->Arg(5);

static void BM_LimitPoint(benchmark::State& state) {
    const auto c = example_collection(3);
    const Word w = parse_word(c, "AAB");
    const Vector x{1, 0.5, -0.2, 0.3, -0.7, 0.9, 0.4};
    const auto q = global_period(c).q;
    for (auto _ : state) benchmark::DoNotOptimize(limit_point(c, w, x, q));
}
BENCHMARK(BM_LimitPoint);

static void BM_ConeLimit(benchmark::State& state) {
    const auto c = example_collection(11);
    const Word w = parse_word(c, "AB");
    const Vector y(c.dimension(), 1.5);
    const auto q = global_period(c).q;
    for (auto _ : state) benchmark::DoNotOptimize(cone_limit(c, w, y, q));
}
BENCHMARK(BM_ConeLimit);

static void BM_Q2Certificate(benchmark::State& state) {
    const auto c = example_collection(3);
    const auto tau = InfiniteWord::periodic({}, {0, 1, 0, 1}, c.size());
    const Vector x{1, 0.5, -0.2, 0.3, -0.7, 0.9, 0.4};
    for (auto _ : state) benchmark::DoNotOptimize(q2_certificate(c, tau, x, Q2Options{}));
}
BENCHMARK(BM_Q2Certificate);
BENCHMARK_MAIN();
