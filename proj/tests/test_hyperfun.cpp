#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lauricella/errors.hpp"
#include "lauricella/hyperfun.hpp"

using namespace lauricella;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::PreconditionViolation;
}

EvalOptions series_only() {
  EvalOptions o;
  o.method = MethodPreference::Series;
  return o;
}

EvalOptions integral_only() {
  EvalOptions o;
  o.method = MethodPreference::IntegralRepresentation;
  return o;
}

FAParams random_params(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> ua(0.2, 2.0), ub(0.1, 1.5), ugap(0.2, 1.5);
  FAParams p;
  p.a = ua(rng);
  for (std::size_t i = 0; i < n; ++i) {
    p.b.push_back(ub(rng));
    p.c.push_back(p.b.back() + ugap(rng));
  }
  return p;
}

// Point with sum |x_i| = radius * U, mixed signs unless negative_only.
std::vector<double> random_point(std::mt19937_64& rng, std::size_t n, double radius, bool negative_only) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> x(n);
  double total = 0.0;
  for (auto& v : x) {
    v = u(rng) + 0.05;
    total += v;
  }
  const double scale = radius * (0.1 + 0.9 * u(rng)) / total;
  for (auto& v : x) {
    v *= scale;
    if (negative_only || u(rng) < 0.5) v = -v;
  }
  return x;
}

// exp_sinh over (0, inf); the far tail where powers overflow is cut.
struct HalfLine {
  boost::math::quadrature::exp_sinh<double> rule;
  template <class F>
  double integrate(F f) {
    return rule.integrate([&](double x) { return x > 1e100 ? 0.0 : f(x); });
  }
};

}  // namespace

TEST_CASE("gauss_2f1 examples") {
  CHECK(gauss_2f1(0.3, 1.7, 2.2, 0.0).value == 1.0);
  const auto r = gauss_2f1(1.0, 1.0, 2.0, 0.5);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(-std::log1p(-0.5) / 0.5).epsilon(1e-14));
  CHECK(r.value == doctest::Approx(1.3862943611198906).epsilon(1e-14));
  CHECK(gauss_2f1(0.3, 1.7, 2.2, 0.4).value == doctest::Approx(gauss_2f1(1.7, 0.3, 2.2, 0.4).value).epsilon(1e-15));
  CHECK(gauss_2f1(0.3, 1.7, 2.2, 0.4).value == doctest::Approx(1.1209812722445474).epsilon(1e-14));
}

TEST_CASE("gauss_2f1 below -1 uses the Euler integral") {
  // Pfaff: 2F1(a,b;c;x) = (1-x)^(-a) 2F1(a, c-b; c; x/(x-1)), series at x/(x-1) in (0,1).
  for (double x : {-1.0, -2.5, -9.0}) {
    const double a = 0.8, b = 0.4, c = 1.3;
    const auto direct = gauss_2f1(a, b, c, x);
    CHECK(direct.method == EvalMethod::IntegralRepresentation);
    const double pfaff = std::pow(1 - x, -a) * gauss_2f1(a, c - b, c, x / (x - 1)).value;
    CHECK(direct.value == doctest::Approx(pfaff).epsilon(1e-12));
  }
  CHECK(code_of([] { gauss_2f1(1.0, 1.0, 2.0, 1.0); }) == ErrorCode::OutsideDomain);
  CHECK(code_of([] { gauss_2f1(1.0, 1.0, -2.0, 0.1); }) == ErrorCode::ParameterPole);
  EvalOptions tight;
  tight.max_total_degree = 5;
  CHECK(code_of([&] { gauss_2f1(1.0, 1.0, 2.0, 0.9, tight); }) == ErrorCode::NonConvergence);
}

TEST_CASE("F_A at the origin and for n = 1") {
  const FAParams p{0.75, {0.25, 0.4}, {0.5, 1.1}};
  const double zero[2] = {0.0, 0.0};
  CHECK(lauricella_fa(p, zero).value == 1.0);

  const double x[1] = {0.3};
  CHECK(lauricella_fa({0.75, {0.25}, {0.5}}, x).value ==
        doctest::Approx(gauss_2f1(0.75, 0.25, 0.5, 0.3).value).epsilon(1e-14));
  CHECK(lauricella_fa({0.75, {0.25}, {0.5}}, x).value == doctest::Approx(1.1453820406104293).epsilon(1e-14));
}

TEST_CASE("F_A n = 1 series matches gauss_2f1 on a grid") {
  const double a = 0.7, b = 0.45, c = 1.35;
  for (int i = 0; i < 50; ++i) {
    const double x = -0.9 + 1.8 * (i + 0.5) / 50.0;
    const double arg[1] = {x};
    const double fa = lauricella_fa({a, {b}, {c}}, arg, series_only()).value;
    const double f21 = gauss_2f1(a, b, c, x).value;
    CHECK(std::abs(fa - f21) <= 1e-12 * std::abs(f21));
  }
}

TEST_CASE("F_A n = 2 series and integral agree with an Appell F2 reference") {
  const FAParams p{0.9, {0.25, 0.25}, {0.5, 0.5}};
  const double x[2] = {-0.3, -0.2};
  const auto s = lauricella_fa(p, x, series_only());
  const auto q = lauricella_fa(p, x, integral_only());
  CHECK(s.method == EvalMethod::Series);
  CHECK(q.method == EvalMethod::IntegralRepresentation);
  CHECK(std::abs(s.value - q.value) <= 1e-8 * std::abs(s.value));
  // Appell F2 is F_A with n = 2 (30-digit reference).
  CHECK(s.value == doctest::Approx(0.8280148335349585).epsilon(1e-13));
}

TEST_CASE("series and integral agree on random all-negative arguments") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const FAParams p = random_params(rng, n);
    const auto x = random_point(rng, n, 0.9, true);
    const double s = lauricella_fa(p, x, series_only()).value;
    const double q = lauricella_fa(p, x, integral_only()).value;
    CHECK(std::abs(s - q) <= 1e-8 * std::abs(s));
  }
}

TEST_CASE("zero-slot reduction") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const FAParams p = random_params(rng, n);
    auto x = random_point(rng, n, 0.8, false);
    const std::size_t j = trial % n;
    x[j] = 0.0;
    FAParams reduced = p;
    reduced.b.erase(reduced.b.begin() + j);
    reduced.c.erase(reduced.c.begin() + j);
    std::vector<double> xr = x;
    xr.erase(xr.begin() + j);
    CHECK(lauricella_fa(p, x).value == doctest::Approx(lauricella_fa(reduced, xr).value).epsilon(1e-14));
  }
}

TEST_CASE("large negative arguments through the graded integral") {
  // Oracle: the 1/x connection formula, both series in 1/x.
  const double a = 1.3, b = 0.35, c = 0.7;
  auto g = [](double v) { return std::tgamma(v); };
  for (double x : {-40.0, -3.0e3, -2.0e6}) {
    const double arg[1] = {x};
    const double direct = lauricella_fa({a, {b}, {c}}, arg).value;
    const double w = 1.0 / x;
    const double oracle =
        g(c) * g(b - a) / (g(b) * g(c - a)) * std::pow(-x, -a) * gauss_2f1(a, a - c + 1, a - b + 1, w).value +
        g(c) * g(a - b) / (g(a) * g(c - b)) * std::pow(-x, -b) * gauss_2f1(b, b - c + 1, b - a + 1, w).value;
    CHECK(direct == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("F_A domain errors") {
  const FAParams p{0.9, {0.25, 0.25}, {0.5, 0.5}};
  const double pos[2] = {0.6, 0.5};
  CHECK(code_of([&] { lauricella_fa(p, pos); }) == ErrorCode::OutsideDomain);
  const double boundary[2] = {0.5, -0.5};
  CHECK(code_of([&] { lauricella_fa(p, boundary); }) == ErrorCode::OutsideDomain);
  const FAParams bad{0.9, {1.5}, {1.0}};
  const double big[1] = {-3.0};
  CHECK(code_of([&] { lauricella_fa(bad, big); }) == ErrorCode::OutsideDomain);
  CHECK(code_of([&] { lauricella_fa({1.0, {0.5}, {-1.0}}, big); }) == ErrorCode::ParameterPole);
  CHECK(code_of([&] { lauricella_fa({1.0, {0.5, 0.2}, {1.0}}, big); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("differentiation formula") {
  const double zero[2] = {0.0, 0.0};
  const FAParams p2{0.9, {0.25, 0.6}, {0.5, 1.7}};
  CHECK(fa_partial(p2, zero, 1) == doctest::Approx(0.9 * 0.6 / 1.7).epsilon(1e-15));

  const double h = 1e-5;
  auto fd_check = [h](const FAParams& p, std::vector<double> x, std::size_t k) {
    const double analytic = fa_partial(p, x, k);
    auto xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    const double fd = (lauricella_fa(p, xp).value - lauricella_fa(p, xm).value) / (2 * h);
    return std::abs(analytic - fd) / std::abs(analytic);
  };
  CHECK(fd_check({0.75, {0.25}, {0.5}}, {-0.2}, 0) <= 1e-6);
  CHECK(fd_check(p2, {-0.1, -0.15}, 0) <= 1e-6);
  CHECK(fd_check(p2, {-0.1, -0.15}, 1) <= 1e-6);

  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const FAParams p = random_params(rng, n);
    const auto x = random_point(rng, n, 0.8, false);
    CHECK(fd_check(p, x, trial % n) <= 1e-6);
  }
}

TEST_CASE("adjacent relation") {
  const double zero[3] = {0.0, 0.0, 0.0};
  const FAParams p3{1.2, {0.2, 0.3, 0.1}, {0.4, 0.6, 0.2}};
  CHECK(fa_adjacent_residual(p3, zero) == 0.0);
  const double x3[3] = {0.1, 0.1, 0.1};
  CHECK(fa_adjacent_residual(p3, x3) <= 1e-10);
  const double x1[1] = {0.25};
  CHECK(fa_adjacent_residual({0.6, {0.3}, {0.6}}, x1) <= 1e-10);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + trial % 4;
    const FAParams p = random_params(rng, n);
    const auto x = random_point(rng, n, 0.8, false);
    CHECK(fa_adjacent_residual(p, x) <= 1e-10);
  }
}

TEST_CASE("adjacent relation with an extra factor a does not hold") {
  // The coefficient a*b_k/c_k fails as soon as a != 1.
  const FAParams p{0.6, {0.3}, {0.6}};
  const double x[1] = {0.25};
  const double lhs = p.a * p.b[0] / p.c[0] * x[0] * lauricella_fa(p.shifted(0), x).value;
  const double rhs = lauricella_fa(p.raised(), x).value - lauricella_fa(p, x).value;
  CHECK(std::abs(lhs - rhs) > 1e-3);
}

TEST_CASE("boundary limit closed form") {
  const double b1[1] = {0.5}, c1[1] = {1.0}, z1[1] = {1.0};
  CHECK(lemma1_closed_form(2.0, b1, c1, z1) == doctest::Approx(0.5).epsilon(1e-14));

  const double b0[2] = {0.0, 0.0}, c0[2] = {0.7, 1.9}, z0[2] = {3.0, 0.2};
  CHECK(lemma1_closed_form(1.4, b0, c0, z0) == doctest::Approx(1.0).epsilon(1e-14));

  const double b2[2] = {0.25, 0.25}, c2[2] = {0.5, 0.5}, z2[2] = {1.0, 1.0};
  const double oracle = std::tgamma(1.0) / std::tgamma(1.5) * std::pow(std::tgamma(0.5) / std::tgamma(0.25), 2);
  CHECK(lemma1_closed_form(1.5, b2, c2, z2) == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(oracle == doctest::Approx(0.2696763005941897).epsilon(1e-14));

  CHECK(code_of([&] { lemma1_closed_form(0.4, b2, c2, z2); }) == ErrorCode::PreconditionViolation);
  const double zbad[2] = {1.0, 0.0};
  CHECK(code_of([&] { lemma1_closed_form(1.5, b2, c2, zbad); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("octant integral closed form against quadrature") {
  HalfLine half_line;

  CHECK(lemma2_closed_form({{1}, {1}, {1}, 2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));

  const double pi = std::numbers::pi;
  const double n1 = half_line.integrate([](double x) { return 1.0 / (1.0 + x * x); });
  CHECK(n1 == doctest::Approx(pi / 2).epsilon(1e-12));
  CHECK(lemma2_closed_form({{1}, {2}, {1}, 1.0, 0.0}) == doctest::Approx(n1).epsilon(1e-12));

  // Polar form of the n = 2 case: (pi/2) int_0^inf rho (1 + rho^2)^-2 drho.
  const double radial = half_line.integrate([](double rho) { return rho / std::pow(1.0 + rho * rho, 2); });
  CHECK(lemma2_closed_form({{1, 1}, {2, 2}, {1, 1}, 2.0, 0.0}) == doctest::Approx(pi / 2 * radial).epsilon(1e-12));
  CHECK(pi / 2 * radial == doctest::Approx(pi / 4).epsilon(1e-12));

  // r enters as r^p: int dx / (1 + (2x)^2) = pi/4.
  const double scaled = half_line.integrate([](double x) { return 1.0 / (1.0 + 4 * x * x); });
  CHECK(lemma2_closed_form({{1}, {2}, {2}, 1.0, 0.0}) == doctest::Approx(scaled).epsilon(1e-12));

  // t != 0 and non-integer p.
  const double shifted = half_line.integrate([](double x) {
    if (x < 1e-100) return 1.0 / std::sqrt(2.0);
    const double y = std::pow(2 * x, 2);
    return std::pow(x, 0.5) / (std::pow(y, 0.25) * std::pow(1 + y, 1.5));
  });
  CHECK(lemma2_closed_form({{1.5}, {2}, {2}, 1.5, 0.25}) == doctest::Approx(shifted).epsilon(1e-10));

  CHECK(code_of([] { lemma2_closed_form({{1}, {2}, {1}, 0.4, 0.0}); }) == ErrorCode::PreconditionViolation);
}

TEST_CASE("slots with b_k = 0 drop out for any argument") {
  const FAParams p{2.0, {0.0, 0.5}, {1.0, 1.5}};
  const FAParams reduced{2.0, {0.5}, {1.5}};
  const double x[2] = {-1e5, -3.0};
  const double xr[1] = {-3.0};
  CHECK(lauricella_fa(p, x).value == doctest::Approx(lauricella_fa(reduced, xr).value).epsilon(1e-14));
  const FAParams all_zero{2.0, {0.0}, {1.0}};
  const double far[1] = {-1e5};
  CHECK(lauricella_fa(all_zero, far).value == 1.0);
}
