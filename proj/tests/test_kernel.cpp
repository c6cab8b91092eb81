#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "lauricella/errors.hpp"
#include "lauricella/kernel.hpp"

using namespace lauricella;

namespace {

Point random_interior(std::mt19937_64& rng, const DomainSpec& spec) {
  std::uniform_real_distribution<double> pos(0.2, 2.0), free(-1.5, 1.5);
  Point p(static_cast<std::size_t>(spec.m));
  for (int i = 0; i < spec.m; ++i) p[i] = i < spec.n ? pos(rng) : free(rng);
  return p;
}

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

const DomainSpec kSpec31{3, 1, {0.25}};
const DomainSpec kSpec42{4, 2, {0.25, 0.3}};

}  // namespace

TEST_CASE("kernel constants") {
  CHECK(kernel_constants(kSpec31).beta == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(kernel_constants({4, 2, {0.25, 0.25}}).beta == doctest::Approx(1.5).epsilon(1e-15));
  // 25-digit references from direct gamma evaluation.
  CHECK(kernel_constants(kSpec31).gamma() == doctest::Approx(0.1591549430918953).epsilon(1e-14));
  CHECK(kernel_constants(kSpec42).gamma() == doctest::Approx(0.1983193516791319).epsilon(1e-14));
  CHECK_THROWS_AS(kernel_constants({2, 1, {0.25}}), Error);
  CHECK_THROWS_AS(kernel_constants({3, 1, {0.5}}), Error);
  CHECK_THROWS_AS(kernel_constants({3, 2, {0.25}}), Error);
}

TEST_CASE("q at a reference point against the Pfaff-transformed series") {
  const Point x{1, 0, 0}, xi{2, 1, 1};
  const double value = q(x, xi, kSpec31);
  // r^2 = 3, sigma = -8/3; 2F1(a,b;c;z) = (1-z)^-a 2F1(a, c-b; c; z/(z-1)).
  const double beta = 0.75, al = 0.25, z = -8.0 / 3.0;
  const double f21 = std::pow(1 - z, -beta) * gauss_2f1(beta, al, 2 * al, z / (z - 1)).value;
  const double oracle = kernel_constants(kSpec31).gamma() * std::pow(3.0, -beta) * f21;
  CHECK(value == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(value == doctest::Approx(0.04401866801847529).epsilon(1e-12));
}

TEST_CASE("q is symmetric, positive and homogeneous") {
  std::mt19937_64 rng(17);
  for (const DomainSpec& spec : {kSpec31, kSpec42, DomainSpec{5, 3, {0.1, 0.2, 0.35}}}) {
    const FundamentalSolution kernel(spec);
    const double degree = 2.0 - spec.m - 2 * spec.alpha_sum();
    std::uniform_real_distribution<double> lam(0.5, 2.0);
    for (int i = 0; i < 15; ++i) {
      const Point x = random_interior(rng, spec), xi = random_interior(rng, spec);
      const double a = kernel(x, xi), b = kernel(xi, x);
      CHECK(a > 0.0);
      CHECK(std::abs(a - b) <= 1e-12 * a);
      const double l = lam(rng);
      Point lx = x, lxi = xi;
      for (auto& v : lx) v *= l;
      for (auto& v : lxi) v *= l;
      CHECK(kernel(lx, lxi) == doctest::Approx(std::pow(l, degree) * a).epsilon(1e-11));
    }
  }
}

TEST_CASE("q on a face reduces to the (n-1)-variable kernel") {
  std::mt19937_64 rng(23);
  const FundamentalSolution k31(kSpec31);
  const double gamma31 = k31.constants().gamma();
  for (int i = 0; i < 10; ++i) {
    Point x = random_interior(rng, kSpec31);
    x[0] = 0.0;
    const Point xi = random_interior(rng, kSpec31);
    double r2 = 0.0;
    for (int j = 0; j < 3; ++j) r2 += (x[j] - xi[j]) * (x[j] - xi[j]);
    CHECK(k31.on_face(0, x, xi) == doctest::Approx(gamma31 * std::pow(r2, -0.75)).epsilon(1e-14));
    CHECK(k31(x, xi) == doctest::Approx(k31.on_face(0, x, xi)).epsilon(1e-14));
  }
  const FundamentalSolution k42(kSpec42);
  for (int i = 0; i < 20; ++i) {
    const std::size_t face = i % 2;
    Point x = random_interior(rng, kSpec42);
    x[face] = 0.0;
    const Point xi = random_interior(rng, kSpec42);
    CHECK(std::abs(k42(x, xi) - k42.on_face(face, x, xi)) <= 1e-10 * k42(x, xi));
  }
  Point off{0.3, 0.4, 0.0, 0.0};
  CHECK_THROWS_AS(k42.on_face(0, off, Point{1, 1, 1, 1}), Error);
}

TEST_CASE("analytic xi-gradient matches central differences") {
  std::mt19937_64 rng(41);
  for (const DomainSpec& spec : {kSpec31, kSpec42, DomainSpec{3, 2, {0.15, 0.4}}, DomainSpec{4, 1, {0.35}}}) {
    const FundamentalSolution kernel(spec);
    for (int trial = 0; trial < 8; ++trial) {
      const Point x = random_interior(rng, spec), xi = random_interior(rng, spec);
      const auto grad = kernel.grad_xi(x, xi);
      const double scale = norm(grad);
      const double h = 1e-5;
      for (int i = 0; i < spec.m; ++i) {
        Point up = xi, down = xi;
        up[i] += h;
        down[i] -= h;
        const double fd = (kernel(x, up) - kernel(x, down)) / (2 * h);
        CHECK(std::abs(fd - grad[i]) <= 1e-5 * scale);
      }
    }
  }
}

TEST_CASE("normal derivative of q vanishes on the faces") {
  std::mt19937_64 rng(43);
  const FundamentalSolution kernel(kSpec42);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t k = trial % 2;
    Point x = random_interior(rng, kSpec42);
    x[k] = 0.0;
    const Point xi = random_interior(rng, kSpec42);
    // dq/dx_k (x, xi) = [grad_xi q(xi, x)]_k by symmetry.
    const auto g = kernel.grad_xi(xi, x);
    CHECK(std::abs(g[k]) <= 1e-13 * norm(g));
  }
}

TEST_CASE("dq/dxi_k is linear in xi_k near the face") {
  // The weighted derivative xi_k^(2 alpha_k) dq/dxi_k therefore stays finite (it vanishes).
  const FundamentalSolution kernel(kSpec42);
  const Point x{0.7, 1.1, 0.3, -0.4};
  std::vector<double> logs, logd;
  for (double e : {1e-2, 1e-3, 1e-4}) {
    const Point xi{e, 0.8, -0.2, 0.5};
    const double d = kernel.grad_xi(x, xi)[0];
    logs.push_back(std::log(e));
    logd.push_back(std::log(std::abs(d)));
    CHECK(std::abs(std::pow(e, 2 * 0.25) * d) < 1.0);
  }
  const double slope = (logd[2] - logd[0]) / (logs[2] - logs[0]);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("pde_residual basics") {
  const Point p{0.6, 0.2, -0.3};
  CHECK(pde_residual([](std::span<const double>) { return 3.5; }, p, kSpec31, 1e-3) == 0.0);

  // x_1^(1 - 2 alpha) is annihilated by the operator; the discrete residual is O(h^2).
  auto power = [](std::span<const double> x) { return std::pow(x[0], 0.5); };
  const double r1 = std::abs(pde_residual(power, p, kSpec31, 1e-2));
  const double r2 = std::abs(pde_residual(power, p, kSpec31, 5e-3));
  CHECK(r1 < 1e-3);
  CHECK(r1 / r2 == doctest::Approx(4.0).epsilon(0.05));

  CHECK_THROWS_AS(pde_residual(power, Point{0.01, 0.0, 0.0}, kSpec31, 1e-2), Error);
}

TEST_CASE("q solves the equation away from the pole") {
  for (const DomainSpec& spec : {kSpec31, kSpec42}) {
    const FundamentalSolution kernel(spec);
    Point xi0(static_cast<std::size_t>(spec.m), 0.0);
    xi0[0] = 1.2;
    if (spec.n > 1) xi0[1] = 0.9;
    Point p(static_cast<std::size_t>(spec.m), 0.3);
    p[0] = 0.5;
    auto field = [&](std::span<const double> x) { return kernel(x, xi0); };
    const auto fine = pde_residual_terms(field, p, spec, 1e-3);
    CHECK(std::abs(fine.residual) <= 1e-4 * fine.scale);
    const double coarse = pde_residual(field, p, spec, 0.02);
    const double half = pde_residual(field, p, spec, 0.01);
    const double ratio = coarse / half;
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
  }
}

TEST_CASE("coincident points are rejected") {
  const Point x{0.5, 0.1, 0.2};
  CHECK_THROWS_AS(q(x, x, kSpec31), Error);
  try {
    q(x, x, kSpec31);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoincidentPoints);
  }
  CHECK_THROWS_AS(q(Point{-0.1, 0, 0}, x, kSpec31), Error);
}
