#include <benchmark/benchmark.h>

#include <sharpconst/extremal.hpp>
#include <sharpconst/limits.hpp>
#include <sharpconst/multivar.hpp>
#include <sharpconst/quadrature.hpp>

using namespace sharpconst;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void BM_gauss_jacobi(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    // bypass the cache by perturbing the exponent per iteration
    double eps = 0.0;
    for (auto _ : state) {
        eps += 1e-9;
        benchmark::DoNotOptimize(gauss_jacobi(n, 0.5 + eps, 0.25));
    }
}
BENCHMARK(BM_gauss_jacobi)->Arg(32)->Arg(128)->Arg(512);

void BM_sharp_p2(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto prob = ExtremalProblem::even(n / 2, WeightSpec::jacobi(1.0, 0.0, 2.0),
                                      OperatorSpec::bessel_at_zero(0.0, 1));
    for (auto _ : state) benchmark::DoNotOptimize(sharp_constant_p2(prob));
}
BENCHMARK(BM_sharp_p2)->Arg(16)->Arg(48)->Arg(96);

void BM_sharp_pinf(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto prob = ExtremalProblem::even(n / 2, WeightSpec::jacobi(1.0, 0.0, kInf),
                                      OperatorSpec::bessel_at_zero(0.0, 1));
    for (auto _ : state) benchmark::DoNotOptimize(sharp_constant_pinf(prob));
}
BENCHMARK(BM_sharp_pinf)->Arg(16)->Arg(48)->Arg(96);

void BM_sharp_p1(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    auto prob = ExtremalProblem::full(n, WeightSpec::jacobi(0.0, 0.5, 1.0),
                                      OperatorSpec::gegenbauer_at_one(1.0, 0));
    for (auto _ : state) benchmark::DoNotOptimize(sharp_constant_general_p(prob, 1e-7));
}
BENCHMARK(BM_sharp_p1)->Arg(8)->Arg(16)->Arg(32);

void BM_multivar_ball_p2(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(
            multivariate_sharp_constant(3, n, 1, DomainSpec::ball(3, 2.0)));
}
BENCHMARK(BM_multivar_ball_p2)->Arg(2)->Arg(4)->Arg(6);

void BM_trial_lower_bound(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(trial_lower_bound(0.5, 1, 2.0));
}
BENCHMARK(BM_trial_lower_bound);

}  // namespace

BENCHMARK_MAIN();
