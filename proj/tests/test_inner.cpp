#include <doctest.h>

#include <cmath>
#include <random>

#include "modelkit/inner.hpp"

using namespace modelkit;
namespace {
const Complex I{0.0, 1.0};

InnerFunctionSpec integer_lattice_spec(long N, double mass = 0.0) {
  ArithFamily fam;
  fam.alpha = 1.0;
  fam.beta = 1.0;
  fam.nmin = -N;
  fam.nmax = N;
  return family_spec(fam, mass);
}
}  // namespace

TEST_CASE("blaschke condition partial sums") {
  SUBCASE("empty zero set") {
    auto rep = blaschke_condition_sum({});
    CHECK(rep.partial_sums == std::vector<double>{0.0});
    CHECK(rep.converged);
  }
  SUBCASE("integer lattice zeros against direct summation") {
    std::vector<Complex> zeros;
    const long N = 3000;
    for (long n = -N; n <= N; ++n) zeros.emplace_back(double(n), 1.0);
    auto rep = blaschke_condition_sum(zeros);
    double direct = 0.0;
    for (long n = -N; n <= N; ++n) direct += 1.0 / (2.0 + double(n) * double(n));
    CHECK(rep.converged);
    CHECK(rep.partial_sums.back() == doctest::Approx(direct).epsilon(1e-14));
  }
  SUBCASE("dyadic imaginary zeros: geometric tail") {
    std::vector<Complex> zeros;
    double direct = 0.0;
    for (int k = 0; k < 60; ++k) {
      const double v = std::pow(2.0, k);
      zeros.emplace_back(0.0, v);
      direct += v / (1.0 + v * v);
    }
    auto rep = blaschke_condition_sum(zeros);
    CHECK(rep.converged);
    CHECK(rep.partial_sums.back() == doctest::Approx(direct).epsilon(1e-14));
  }
  SUBCASE("rejects lower half-plane zero") {
    CHECK_THROWS_AS(blaschke_condition_sum({Complex(1.0, -1.0)}),
                    NonUpperHalfZero);
  }
}

TEST_CASE("phase alpha") {
  CHECK(phase_alpha(I) == 0.0);

  const Complex w(1.0, 1.0);
  const Complex rho = (I - w) / (I - std::conj(w));
  const double expected = -std::arg(rho);
  CHECK(phase_alpha(w) == doctest::Approx(expected));
  // mirror symmetry across the imaginary axis
  CHECK(phase_alpha(Complex(-1.0, 1.0)) ==
        doctest::Approx(-phase_alpha(Complex(1.0, 1.0))).epsilon(1e-14));
  CHECK(phase_alpha(w) > -M_PI);
  CHECK(phase_alpha(w) <= M_PI);
}

TEST_CASE("eval_inner closed forms") {
  SUBCASE("pure singular at i") {
    auto r = eval_inner(singular_spec(1.0), I);
    CHECK(std::abs(r.value - std::exp(-1.0)) < 1e-15);
    CHECK(r.truncation_error_bound == 0.0);
  }
  SUBCASE("single Blaschke factor is unimodular on the line") {
    auto spec = blaschke_spec({I});
    for (double x : {-7.3, -1.0, 0.0, 0.5, 12.0}) {
      auto r = eval_inner(spec, Complex(x, 0.0));
      CHECK(std::abs(std::abs(r.value) - 1.0) < 1e-14);
    }
  }
  SUBCASE("integer lattice product: interior contraction and N vs 2N") {
    auto rN = eval_inner(integer_lattice_spec(500), Complex(0.0, 0.5));
    auto r2N = eval_inner(integer_lattice_spec(1000), Complex(0.0, 0.5));
    CHECK(std::abs(rN.value) < 1.0);
    // truncation estimate from the family tail bound of the coarser run
    auto unbounded = family_spec(ArithFamily{1.0, 1.0, {}, {}});
    TruncationSchedule s1{1000, 1e-10};
    TruncationSchedule s2{2000, 1e-10};
    auto u1 = eval_inner(unbounded, Complex(0.0, 0.5), s1);
    auto u2 = eval_inner(unbounded, Complex(0.0, 0.5), s2);
    CHECK(std::abs(u1.value - u2.value) <= u1.truncation_error_bound);
    // monotone truncation
    CHECK(u2.truncation_error_bound <= u1.truncation_error_bound);
    // on the line the truncated product stays unimodular
    auto ul = eval_inner(unbounded, Complex(0.5, 0.0), s1);
    CHECK(std::abs(std::abs(ul.value) - 1.0) <= ul.truncation_error_bound + 1e-12);
  }
}

TEST_CASE("arg_on_line") {
  std::vector<double> grid;
  for (double x = -10.0; x <= 10.0 + 1e-9; x += 0.05) grid.push_back(x);

  SUBCASE("pure singular has linear argument") {
    const double a = 2.0;
    auto theta = arg_on_line(singular_spec(a), grid);
    std::size_t k0 = 0;
    for (std::size_t k = 0; k < grid.size(); ++k)
      if (std::abs(grid[k]) < std::abs(grid[k0])) k0 = k;
    const double c = theta[k0] - a * grid[k0];
    CHECK(c > -M_PI - 1e-12);
    CHECK(c <= M_PI + 1e-12);
    for (std::size_t k = 0; k < grid.size(); ++k)
      CHECK(theta[k] == doctest::Approx(a * grid[k] + c).epsilon(1e-10));
  }
  SUBCASE("b_i argument is 2 arctan") {
    auto spec = blaschke_spec({I});
    auto theta = arg_on_line(spec, grid);
    std::size_t k0 = 200;  // x = 0
    CHECK(grid[k0] == doctest::Approx(0.0));
    for (std::size_t k = 0; k < grid.size(); k += 17) {
      CHECK(theta[k] - theta[k0] ==
            doctest::Approx(2.0 * std::atan(grid[k])).epsilon(1e-8));
    }
  }
  SUBCASE("argument of a product adds") {
    auto both = blaschke_spec({I}, 1.0);
    auto t_prod = arg_on_line(both, grid);
    auto t_s = arg_on_line(singular_spec(1.0), grid);
    auto t_b = arg_on_line(blaschke_spec({I}), grid);
    for (std::size_t k = 0; k < grid.size(); k += 13) {
      const double d = (t_prod[k] - t_prod[200]) -
                       ((t_s[k] - t_s[200]) + (t_b[k] - t_b[200]));
      CHECK(std::abs(d) < 1e-8);
    }
  }
  SUBCASE("coarse grid rejected") {
    std::vector<double> coarse{-10.0, 0.0, 10.0};
    CHECK_THROWS_AS(arg_on_line(singular_spec(5.0), coarse), GridTooCoarse);
  }
}

TEST_CASE("derivative modulus on the line") {
  SUBCASE("pure singular") {
    auto d = derivative_modulus_on_line(singular_spec(1.5), {-3.0, 0.0, 7.0});
    for (double v : d.values) CHECK(v == doctest::Approx(1.5));
  }
  SUBCASE("one zero at i") {
    auto d = derivative_modulus_on_line(blaschke_spec({I}), {0.0});
    CHECK(d.values[0] == doctest::Approx(2.0));
  }
  SUBCASE("integer lattice: direct sum oracle and bounds") {
    auto d = derivative_modulus_on_line(integer_lattice_spec(10000), {0.0});
    double direct = 0.0;
    for (long n = -10000; n <= 10000; ++n)
      direct += 2.0 / (double(n) * double(n) + 1.0);
    CHECK(d.values[0] == doctest::Approx(direct).epsilon(1e-13));
    CHECK(d.values[0] >= 2.0);
    CHECK(d.values[0] <= 2.0 + 2.0 * M_PI * M_PI / 3.0);
  }
  SUBCASE("finite differences of the argument agree") {
    auto spec = blaschke_spec({Complex(0.3, 0.8), Complex(-1.2, 2.0)}, 0.7);
    const double h = 1e-4;
    std::vector<double> grid;
    for (int k = -2; k <= 2; ++k) grid.push_back(1.1 + h * k);
    auto theta = arg_on_line(spec, grid);
    const double fd = (theta[3] - theta[1]) / (2.0 * h);
    auto d = derivative_modulus_on_line(spec, {1.1});
    CHECK(d.values[0] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("reproducing kernels") {
  SUBCASE("H^2 kernel at i matches the 1/(pi(z+i)) normalization") {
    const Complex z(0.7, 0.9);
    CHECK(std::abs(reproducing_kernel(H2Space{}, I, z) -
                   (1.0 / M_PI) / (z + I)) < 1e-15);
  }
  SUBCASE("model kernel of S at i evaluated at i") {
    const Complex v = reproducing_kernel(singular_spec(1.0), I, I);
    CHECK(v.real() == doctest::Approx((1.0 - std::exp(-2.0)) / (4.0 * M_PI))
                          .epsilon(1e-14));
    CHECK(std::abs(v.imag()) < 1e-16);
  }
  SUBCASE("kernel with U(lambda)=0 degenerates to the H^2 kernel") {
    auto spec = blaschke_spec({I});
    const Complex lam = I;  // zero of the product
    const Complex z(2.0, 1.0);
    const Complex expected = (I / (2.0 * M_PI)) / (z - std::conj(lam));
    CHECK(std::abs(reproducing_kernel(spec, lam, z) - expected) < 1e-15);
  }
  SUBCASE("derivatives match finite differences") {
    auto spec = singular_spec(1.0);
    const Complex lam(0.4, 1.3), z(1.0, 0.9);
    auto kd = reproducing_kernel_derivatives(spec, lam, z, 2);
    const double h = 1e-5;
    const Complex k_p = reproducing_kernel(spec, lam, z + Complex(h, 0.0));
    const Complex k_m = reproducing_kernel(spec, lam, z - Complex(h, 0.0));
    CHECK(std::abs((k_p - k_m) / (2.0 * h) - kd[1]) < 1e-6);
    CHECK(std::abs((k_p - 2.0 * kd[0] + k_m) / (h * h) - kd[2]) < 1e-4);
  }
}

TEST_CASE("error paths") {
  SUBCASE("lower half-plane evaluation point") {
    CHECK_THROWS_AS(eval_inner(singular_spec(1.0), Complex(0.0, -1.0)),
                    NonUpperHalfPoint);
  }
  SUBCASE("unbounded family beyond the hard truncation cap") {
    ArithFamily fam;
    fam.alpha = 1e-8;  // validity would need ~10^8 terms
    fam.beta = 1.0;
    auto spec = family_spec(fam);
    CHECK_THROWS_AS(eval_inner(spec, Complex(0.0, 1.0)), TailNotBounded);
  }
  SUBCASE("kernel point on the line is rejected") {
    CHECK_THROWS_AS(reproducing_kernel(singular_spec(1.0), Complex(1.0, 0.0),
                                       Complex(0.0, 1.0)),
                    NonUpperHalfPoint);
    CHECK_THROWS_AS(reproducing_kernel(H2Space{}, Complex(1.0, 0.0),
                                       Complex(0.0, 1.0)),
                    NonUpperHalfPoint);
  }
  SUBCASE("non-unimodular constant is rejected") {
    InnerFunctionSpec bad;
    bad.unimodular_constant = Complex(2.0, 0.0);
    CHECK_THROWS_AS(eval_inner(bad, Complex(0.0, 1.0)), std::invalid_argument);
  }
}

TEST_CASE("kernel reproduction under the line inner product") {
  // <f, k_lambda> must equal f(lambda) for combinations of kernels; the
  // oracle is plain quadrature over a wide window plus nothing clever.
  auto spec = blaschke_spec({Complex(0.4, 1.0)}, 1.0);
  const std::vector<Complex> mus{Complex(-1.0, 0.8), Complex(2.0, 1.5)};
  const std::vector<Complex> coeffs{Complex(0.7, -0.2), Complex(-1.1, 0.4)};
  const Complex lambda(0.5, 1.2);

  auto f = [&](Complex z) {
    Complex acc(0.0, 0.0);
    for (std::size_t j = 0; j < mus.size(); ++j)
      acc += coeffs[j] * reproducing_kernel(spec, mus[j], z);
    return acc;
  };

  // trapezoid on a wide uniform grid; the window tail is ~2.4e-5
  Complex ip(0.0, 0.0);
  const double T = 20000.0, h = 0.05;
  for (double t = -T; t <= T; t += h) {
    const double w = (t == -T || t + h > T) ? 0.5 : 1.0;
    ip += w * h * f(Complex(t, 0.0)) *
          std::conj(reproducing_kernel(spec, lambda, Complex(t, 0.0)));
  }
  CHECK(std::abs(ip - f(lambda)) < 1e-4);
}

TEST_CASE("unimodularity and contractivity on random specs") {
  std::mt19937_64 rng(20240901);
  std::uniform_real_distribution<double> umass(0.0, 3.0);
  std::uniform_real_distribution<double> ure(-20.0, 20.0);
  std::uniform_real_distribution<double> uim(0.1, 10.0);
  std::uniform_real_distribution<double> uphase(-M_PI, M_PI);
  std::uniform_int_distribution<int> unz(0, 20);

  for (int trial = 0; trial < 1000; ++trial) {
    InnerFunctionSpec spec;
    spec.mass = umass(rng);
    spec.unimodular_constant = std::polar(1.0, uphase(rng));
    std::vector<Complex> zeros;
    const int nz = unz(rng);
    for (int k = 0; k < nz; ++k) zeros.emplace_back(ure(rng), uim(rng));
    if (!zeros.empty()) spec.blaschke = BlaschkeData(zeros);

    const double x = ure(rng);
    auto on_line = eval_inner(spec, Complex(x, 0.0));
    CHECK(std::abs(std::abs(on_line.value) - 1.0) <=
          on_line.truncation_error_bound + 1e-12);

    const Complex z(ure(rng), uim(rng));
    auto interior = eval_inner(spec, z);
    CHECK(std::abs(interior.value) <=
          1.0 + interior.truncation_error_bound + 1e-12);

    // argument consistency at one point
    const double theta = std::arg(on_line.value);
    CHECK(std::abs(std::polar(1.0, theta) -
                   on_line.value / std::abs(on_line.value)) < 1e-12);
  }
}
