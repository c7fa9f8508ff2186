#include <benchmark/benchmark.h>

#include <complex>
#include <random>

#include "modelkit/density.hpp"
#include "modelkit/hilbert.hpp"
#include "modelkit/rational.hpp"
#include "modelkit/toeplitz.hpp"

namespace mk = modelkit;
using mk::Complex;

namespace {

mk::InnerFunctionSpec random_blaschke(int zeros, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ure(-30.0, 30.0), uim(0.2, 5.0);
  std::vector<Complex> ws;
  for (int k = 0; k < zeros; ++k) ws.emplace_back(ure(rng), uim(rng));
  return mk::blaschke_spec(std::move(ws), 1.0);
}

void BM_EvalInnerFinite(benchmark::State& state) {
  const auto spec = random_blaschke(int(state.range(0)), 1234);
  double x = 0.0;
  for (auto _ : state) {
    auto r = mk::eval_inner(spec, Complex(x, 0.0));
    benchmark::DoNotOptimize(r.value);
    x += 0.1;
  }
}
BENCHMARK(BM_EvalInnerFinite)->Arg(8)->Arg(64)->Arg(512);

void BM_EvalInnerFamily(benchmark::State& state) {
  mk::ArithFamily fam;
  const auto spec = mk::family_spec(fam);
  mk::TruncationSchedule sched{int(state.range(0)), 1e-10};
  for (auto _ : state) {
    auto r = mk::eval_inner(spec, Complex(0.5, 0.5), sched);
    benchmark::DoNotOptimize(r.truncation_error_bound);
  }
}
BENCHMARK(BM_EvalInnerFamily)->Arg(2000)->Arg(20000);

void BM_HilbertTransform(benchmark::State& state) {
  const auto h = mk::named_pi_function("poisson");
  for (auto _ : state) {
    auto r = mk::hilbert_transform(h, 1.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_HilbertTransform);

void BM_RegularityIntegral(benchmark::State& state) {
  std::vector<Complex> pts;
  const long N = state.range(0);
  for (long n = -N; n <= N; ++n) pts.emplace_back(double(n), 1.0);
  const auto star =
      mk::star_transform(mk::DiscreteSequence::from_points(pts)).sequence;
  for (auto _ : state) {
    auto rep = mk::regularity_integral(star, 1.0);
    benchmark::DoNotOptimize(rep.window_integrals.back().second);
  }
}
BENCHMARK(BM_RegularityIntegral)->Arg(1000)->Arg(10000);

void BM_ResidueLineIntegral(benchmark::State& state) {
  namespace rat = mk::rational;
  const auto spec = random_blaschke(int(state.range(0)), 99);
  const auto k1 = rat::model_kernel_expression(spec, Complex(0.0, 1.0), false);
  const auto k2 =
      rat::conjugate(rat::model_kernel_expression(spec, Complex(2.0, 1.0), false));
  for (auto _ : state) {
    auto v = rat::line_integral(rat::multiply(k1, k2));
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ResidueLineIntegral)->Arg(4)->Arg(16)->Arg(64);

void BM_DiscretizeToeplitz(benchmark::State& state) {
  const auto S1 = mk::singular_spec(1.0);
  const auto sym = mk::make_symbol({{S1, -1}});
  const int n = int(state.range(0));
  const auto basis = mk::default_kernel_basis(S1, n);
  for (auto _ : state) {
    auto d = mk::discretize_toeplitz(sym, basis, S1);
    benchmark::DoNotOptimize(d.sigma_min);
  }
}
BENCHMARK(BM_DiscretizeToeplitz)->Arg(16)->Arg(32)->Arg(64);

void BM_MultiplierResidual(benchmark::State& state) {
  const auto S1 = mk::singular_spec(1.0);
  const auto S2 = mk::singular_spec(2.0);
  auto phi = [S1](double x) {
    return mk::reproducing_kernel(S1, Complex(0.0, 1.0), Complex(x, 0.0));
  };
  mk::MultiplierResidualConfig cfg;
  cfg.grid.half_width = 500.0;
  cfg.grid.target_step = 0.05;
  const std::vector<Complex> pts{Complex(0.5, 1.0)};
  for (auto _ : state) {
    auto r = mk::multiplier_residual(S1, S2, phi, pts, cfg);
    benchmark::DoNotOptimize(r[0]);
  }
}
BENCHMARK(BM_MultiplierResidual);

}  // namespace

BENCHMARK_MAIN();
