#include <benchmark/benchmark.h>

#include <numbers>

#include "cvsteer/criteria.hpp"
#include "cvsteer/fock.hpp"
#include "cvsteer/quadrature.hpp"

using namespace cvsteer;

namespace {

void BM_GaussHermiteRule(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_hermite_rule(order));
}
BENCHMARK(BM_GaussHermiteRule)->Arg(16)->Arg(64)->Arg(128)->Arg(512);

void BM_HermiteFunctions(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  std::vector<double> out(n_max + 1);
  double y = 0.3;
  for (auto _ : state) {
    hermite_functions(n_max, y, out);
    benchmark::DoNotOptimize(out.data());
    y += 1e-9;
  }
}
BENCHMARK(BM_HermiteFunctions)->Arg(1)->Arg(32)->Arg(256);

void BM_JointDensity(benchmark::State& state) {
  const auto psi = make_psi(0.7);
  double a = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(joint_density(psi, a, 0.4, Domain::Momentum));
    a += 1e-9;
  }
}
BENCHMARK(BM_JointDensity);

void BM_Entropy2d(benchmark::State& state) {
  const auto psi = make_psi(0.7);
  const QuadratureSpec spec;
  const UnitSystem units;
  for (auto _ : state) {
    auto r = integrate_entropy_2d_sliced(
        [&](double a) {
          ConditionalSlice slice(psi, a, Domain::Position, units);
          auto zeros = slice.zeros();
          return SliceIntegrand{[slice](double b) { return slice.density(b); }, std::move(zeros)};
        },
        spec);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_Entropy2d)->Unit(benchmark::kMillisecond);

void BM_Criterion(benchmark::State& state) {
  const auto c = static_cast<Criterion>(state.range(0));
  const QuadratureSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(evaluate(c, StateFamily::Psi, 0.7, spec).value);
  state.SetLabel(std::string(to_string(c)));
}
BENCHMARK(BM_Criterion)
    ->Arg(static_cast<int>(Criterion::Reid))
    ->Arg(static_cast<int>(Criterion::Entropic))
    ->Arg(static_cast<int>(Criterion::Chsh))
    ->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
