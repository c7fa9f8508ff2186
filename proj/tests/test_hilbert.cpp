#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "modelkit/hilbert.hpp"
#include "modelkit/inner.hpp"
#include "modelkit/quadrature.hpp"

using namespace modelkit;

namespace {

// Brute-force principal value at a single small excision, independent of the
// extrapolating implementation.
double brute_pv(const PiFunction& h, double x, double eps, double W) {
  auto f = [&](double t) {
    return (1.0 / (x - t) + t / (1.0 + t * t)) * h(t);
  };
  auto right = quad::over_panels(f, quad::graded_breakpoints(x + eps, W, eps, 2.0));
  std::vector<double> lb = quad::graded_breakpoints(-(x - eps), W, eps, 2.0);
  double left = 0.0;
  for (std::size_t i = 0; i + 1 < lb.size(); ++i)
    left += quad::gk15(f, -lb[i + 1], -lb[i]).value;
  return (right.value + left) / M_PI;
}

}  // namespace

TEST_CASE("hilbert transform closed forms") {
  SUBCASE("zero function") {
    auto h = named_pi_function("zero");
    for (double x : {-3.0, 0.0, 2.0})
      CHECK(hilbert_transform(h, x).value == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("poisson kernel pairs with its conjugate") {
    auto h = named_pi_function("poisson");
    for (double x : {-3.0, -1.0, 0.0, 0.5, 1.0, 10.0}) {
      auto r = hilbert_transform(h, x);
      CHECK(r.value == doctest::Approx(x / (1.0 + x * x)).epsilon(1e-6));
      CHECK(std::abs(r.value - x / (1.0 + x * x)) <= r.richardson_error + 1e-9);
    }
  }
  SUBCASE("brute-force PV quadrature agrees at eps = 1e-6, W = 1e6") {
    auto h = named_pi_function("poisson");
    for (double x : {0.0, 1.0, -3.0}) {
      const double brute = brute_pv(h, x, 1e-6, 1e6);
      CHECK(brute == doctest::Approx(x / (1.0 + x * x)).epsilon(1e-4));
    }
  }
  SUBCASE("constants map to zero") {
    auto h = named_pi_function("one");
    for (double x : {0.0, 1.0, -3.0})
      CHECK(std::abs(hilbert_transform(h, x).value) < 2e-4);
  }
}

TEST_CASE("analytic pair property for rational upper-half functions") {
  // F(z) = i/(z + i b): real part b/(t^2+b^2), imaginary part t/(t^2+b^2),
  // and Im F(i) = 0, so the regularized transform reproduces Im F exactly.
  for (double b : {0.5, 1.0, 2.0}) {
    auto h = pi_function_from_callable(
        [b](double t) { return b / (t * t + b * b); }, b, -2.0, 1.0, "rational");
    for (double x : {-2.0, 0.3, 4.0}) {
      const double expected = x / (x * x + b * b);
      CHECK(hilbert_transform(h, x).value ==
            doctest::Approx(expected).epsilon(1e-5));
    }
  }
}

TEST_CASE("hilbert transform linearity") {
  auto h1 = named_pi_function("poisson");
  auto h2 = named_pi_function("gauss");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> uc(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = uc(rng), b = uc(rng);
    const double x = uc(rng);
    auto combo = pi_function_from_callable(
        [a, b, h1, h2](double t) { return a * h1(t) + b * h2(t); },
        std::abs(a) + std::abs(b), -2.0, 2.0, "combo");
    const double lhs = hilbert_transform(combo, x).value;
    const double rhs = a * hilbert_transform(h1, x).value +
                       b * hilbert_transform(h2, x).value;
    CHECK(lhs == doctest::Approx(rhs).epsilon(5e-6));
  }
}

TEST_CASE("error monotonicity under schedule refinement") {
  auto h = named_pi_function("poisson");
  PVSchedule coarse;
  PVSchedule fine = coarse.refined();
  const auto rc = hilbert_transform(h, 1.0, coarse);
  const auto rf = hilbert_transform(h, 1.0, fine);
  CHECK(rf.richardson_error <= rc.richardson_error);
}

TEST_CASE("outer functions from a modulus") {
  std::vector<double> grid{-2.0, -0.5, 0.0, 1.0, 3.0};
  SUBCASE("zero modulus gives the constant one") {
    auto out = outer_from_modulus(named_pi_function("zero"), grid);
    for (auto v : out.values) CHECK(std::abs(v - Complex(1.0, 0.0)) < 1e-10);
  }
  SUBCASE("poisson modulus") {
    auto out = outer_from_modulus(named_pi_function("poisson"), grid);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double x = grid[k];
      const Complex expected = std::exp(Complex(1.0, x) / (1.0 + x * x));
      CHECK(std::abs(out.values[k] - expected) < 1e-5);
      // modulus is exact by construction
      CHECK(std::abs(out.values[k]) ==
            doctest::Approx(std::exp(1.0 / (1.0 + x * x))).epsilon(1e-15));
    }
  }
}

TEST_CASE("weak-L1 tail diagnostics") {
  SUBCASE("zero function has zero products") {
    auto rows = weak_l1_tail(named_pi_function("zero"), {0.5, 1.0, 2.0});
    for (auto& [A, prod] : rows) CHECK(prod == 0.0);
  }
  SUBCASE("poisson conjugate has max 1/2") {
    auto rows = weak_l1_tail(named_pi_function("poisson"), {0.6, 1.0});
    for (auto& [A, prod] : rows) CHECK(prod == 0.0);
  }
  SUBCASE("gaussian bump products decrease eventually") {
    auto rows = weak_l1_tail(named_pi_function("gauss"), {0.5, 1.0, 2.0, 4.0});
    CHECK(rows.back().second <= rows.front().second + 1e-12);
  }
}

TEST_CASE("integrability certification") {
  SUBCASE("linear growth is rejected") {
    auto bad = pi_function_from_callable([](double t) { return t; }, 1.0, 1.0,
                                         1.0, "linear");
    CHECK_FALSE(certify_in_l1_pi(bad).certified);
    CHECK_THROWS_AS(hilbert_transform(bad, 0.0), NotIntegrable);
  }
  SUBCASE("inconsistent declaration is caught") {
    auto liar = pi_function_from_callable([](double) { return 1.0; }, 1.0,
                                          -2.0, 1.0, "liar");
    CHECK_FALSE(certify_in_l1_pi(liar).certified);
  }
  SUBCASE("singularity swamp is detected") {
    auto spike = pi_function_from_callable(
        [](double t) { return 1.0 / std::sqrt(std::abs(t - 1.0) + 1e-300); },
        1.0, -1.0, 2.0, "spike");
    CHECK_THROWS_AS(hilbert_transform(spike, 1.0), SingularitySwamp);
  }
}

TEST_CASE("sampled table sources") {
  std::vector<std::pair<double, double>> rows;
  for (double t = -30.0; t <= 30.0 + 1e-9; t += 0.01)
    rows.emplace_back(t, 1.0 / (1.0 + t * t));
  auto h = pi_function_from_table(rows, -2.0);
  CHECK(h(0.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(h(100.0) == doctest::Approx(1e-4).epsilon(0.2));
  const auto r = hilbert_transform(h, 1.0);
  CHECK(r.value == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("csv table sources") {
  const std::string path = "mk_test_table.csv";
  {
    std::ofstream out(path);
    out << "t,value\n";
    for (double t = -20.0; t <= 20.0 + 1e-9; t += 0.05)
      out << t << "," << 1.0 / (1.0 + t * t) << "\n";
  }
  auto h = pi_function_from_csv(path, -2.0);
  CHECK(h(1.0) == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(certify_in_l1_pi(h).certified);
  std::remove(path.c_str());

  CHECK_THROWS_AS(pi_function_from_csv("does_not_exist.csv", -2.0),
                  SchemaError);
}
