#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>

#include "lauricella/errors.hpp"
#include "lauricella/gauss_jacobi.hpp"
#include "lauricella/neumann.hpp"
#include "lauricella/verify.hpp"

namespace lauricella {

namespace {

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

struct Scenario {
  DomainSpec spec;
  std::vector<BoundaryDatum> data;
  QuadratureSpec quad;
  QuadratureSpec residual_quad;  // frozen rules for the residual grid
  std::size_t flux_face = 0;
  Point flux_base;               // coordinate flux_face is replaced by the sequence
  std::size_t off_l = 0, off_k = 0;
  Point off_base;
  Point ray;                     // unit direction of the decay ray
  std::vector<std::vector<double>> grid;  // per-axis residual grid
};

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(a + (b - a) * i / (count - 1));
  return v;
}

Scenario make_scenario(const std::string& name) {
  Scenario s;
  if (name == "zero31" || name == "bump31") {
    s.spec = DomainSpec{3, 1, {0.25}};
    if (name == "bump31") s.data.push_back(BoundaryDatum::gaussian(0, 1.0, {0.0, 0.0}, 0.5).with_fitted_bound(s.spec, 0.5));
    s.quad.base_order = 8;
    s.quad.target_rel_tol = 1e-6;
    s.residual_quad = s.quad;
    s.flux_base = {0.0, 0.0, 0.0};
    const double c = 1.0 / std::sqrt(3.0);
    s.ray = {c, c, c};
    s.grid = {linspace(0.3, 1.5, 5), linspace(-1.0, 1.0, 5), linspace(-1.0, 1.0, 5)};
    return s;
  }
  if (name == "zero42" || name == "algebraic42") {
    s.spec = DomainSpec{4, 2, {0.25, 0.3}};
    if (name == "algebraic42") {
      s.data.push_back(BoundaryDatum::bound_matching(0, s.spec, 1.0, 0.5));
      s.data.push_back(BoundaryDatum::algebraic(1, 0.5, 1.2, {0.2, 0.3, -0.1}).with_fitted_bound(s.spec, 0.5));
    }
    s.quad.base_order = 4;
    s.quad.target_rel_tol = 1e-3;
    s.residual_quad = s.quad;
    s.flux_base = {0.0, 0.5, 0.2, -0.1};
    s.off_l = 1;
    s.off_k = 0;
    s.off_base = {0.3, 0.0, 0.2, -0.1};
    s.ray = {0.5, 0.5, 0.5, 0.5};
    s.grid = {linspace(0.4, 1.2, 2), linspace(0.4, 1.2, 2), linspace(-0.5, 0.5, 2), linspace(-0.5, 0.5, 2)};
    return s;
  }
  throw Error(ErrorCode::PreconditionViolation, "check_neumann_end_to_end: unknown scenario '" + name + "'");
}

double datum_on(const Scenario& s, std::size_t face, std::span<const double> x) {
  for (const auto& d : s.data) {
    if (d.face() != face) continue;
    std::vector<double> xf;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (i != face) xf.push_back(x[i]);
    return d(xf);
  }
  return 0.0;
}

double min_eps(const Scenario& s) {
  double e = 0.5;
  for (const auto& d : s.data) e = std::min(e, d.bound_eps());
  return e;
}

const std::vector<double> kPath{0.1, 0.05, 0.025, 0.0125};

CheckReport flux_check(const Scenario& s, const NeumannProblem& p, double tol) {
  const std::size_t k = s.flux_face;
  std::vector<double> seq;
  Point xi = s.flux_base;
  for (double v : kPath) {
    xi[k] = v;
    seq.push_back(p.weighted_flux(xi, k).value);
  }
  const double order = 1.0 + 2.0 * s.spec.alpha[k];
  const double extrapolated = seq[3] + (seq[3] - seq[2]) / (std::pow(2.0, order) - 1.0);
  const double nu = datum_on(s, k, s.flux_base);
  const std::string note = "flux " + fmt(seq[0]) + " .. " + fmt(seq[3]) + ", nu " + fmt(nu);
  if (nu == 0.0) return make_report("flux", extrapolated, 0.0, tol, note);
  return make_report("flux", extrapolated / nu, 1.0, tol, note);
}

CheckReport off_face_check(const Scenario& s, double tol) {
  const std::size_t l = s.off_l, k = s.off_k;
  BoundaryDatum datum = BoundaryDatum::zero(k);
  for (const auto& d : s.data)
    if (d.face() == k) datum = d;
  const auto seq = off_face_flux_limit(datum, s.off_base, kPath, l, k, s.spec, s.quad);
  const double expected = 1.0 + 2.0 * s.spec.alpha[l];
  if (datum.is_zero()) {
    double worst = 0.0;
    for (double v : seq) worst = std::max(worst, std::abs(v));
    return make_report("off_face", worst, 0.0, tol, "zero datum");
  }
  const double slope = std::log(std::abs(seq[3] / seq[2])) / std::log(kPath[3] / kPath[2]);
  return make_report("off_face", slope, expected, tol,
                     "drop " + fmt(std::abs(seq[0] / seq[3])) + " from xi_l = 0.1 to 0.0125");
}

CheckReport decay_check(const Scenario& s, const NeumannProblem& p, double tol) {
  const double eps = min_eps(s);
  std::vector<double> products;
  for (double R : {10.0, 20.0, 40.0}) {
    Point xi = s.ray;
    for (double& v : xi) v *= R;
    products.push_back(std::abs(p.evaluate(xi).u) * std::pow(R, eps));
  }
  double excess = 0.0;
  for (std::size_t i = 1; i < products.size(); ++i)
    if (products[i - 1] > 0.0) excess = std::max(excess, products[i] / products[i - 1] - 1.0);
  return make_report("decay", excess, 0.0, tol,
                     "|u| R^eps at R = 10, 20, 40: " + fmt(products[0]) + " " + fmt(products[1]) + " " + fmt(products[2]));
}

CheckReport residual_check(const Scenario& s, double tol) {
  const NeumannProblem p(s.spec, s.data, s.residual_quad);
  const auto m = static_cast<std::size_t>(s.spec.m);
  std::vector<std::size_t> idx(m, 0);
  double worst = 0.0;
  std::size_t points = 0;
  while (true) {
    Point x(m);
    for (std::size_t i = 0; i < m; ++i) x[i] = s.grid[i][idx[i]];
    const auto frozen = p.frozen(x, 0);
    const ScalarField field = [&](std::span<const double> y) { return frozen.u(y); };
    const StencilResidual r = pde_residual_terms(field, x, s.spec, 1e-3);
    if (r.scale > 0.0) worst = std::max(worst, std::abs(r.residual) / r.scale);
    ++points;
    std::size_t a = m;
    while (a > 0) {
      --a;
      if (++idx[a] < s.grid[a].size()) break;
      idx[a] = 0;
    }
    if (a == 0 && idx[0] == 0) break;
  }
  return make_report("residual", worst, 0.0, tol, "max |E_h u| / scale on " + std::to_string(points) + " grid points");
}

// Composite rule on [a, b] with interior breakpoints; optionally the first
// panel carries the weight (x - a)^first_exp, which the caller must leave out.
void composite(std::vector<double> cuts, std::size_t order, double first_exp, std::vector<double>& x,
               std::vector<double>& w) {
  x.clear();
  w.clear();
  const QuadratureRule gl = gauss_legendre_unit(order);
  const QuadratureRule gj = gauss_jacobi_unit(order, first_exp, 0.0);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], h = cuts[i + 1] - cuts[i];
    if (!(h > 0.0)) continue;
    const bool weighted = i == 0 && first_exp != 0.0;
    const QuadratureRule& r = weighted ? gj : gl;
    const double scale = weighted ? std::pow(h, 1.0 + first_exp) : h;
    for (std::size_t j = 0; j < r.size(); ++j) {
      x.push_back(a + h * r.nodes[j]);
      w.push_back(scale * r.weights[j]);
    }
  }
}

std::vector<double> clipped(std::vector<double> cuts, double hi) {
  std::vector<double> out;
  for (double c : cuts)
    if (c < hi) out.push_back(c);
  out.push_back(hi);
  return out;
}

struct EnergyFields {
  double alpha = 0.25;
  std::function<double(std::span<const double>)> u;
  std::function<std::vector<double>(std::span<const double>)> grad;
  std::function<double(std::span<const double>)> nu;  // face coordinates (x_2, x_3)
  double face_radius = 0.0;                           // nu = 0 beyond
};

struct EnergySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

EnergySides energy_sides(const EnergyFields& f, double R, std::size_t order, std::size_t nphi) {
  const double a2 = 2.0 * f.alpha;
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> phi;
  for (std::size_t j = 0; j < nphi; ++j) phi.push_back(two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(nphi));
  const double wphi = two_pi / static_cast<double>(nphi);

  // Volume: x_1 = s^2, cylindrical (rho, phi) in (x_2, x_3); the factor
  // s^(1 - 4 alpha) of the Jacobian is carried by the first s panel.
  EnergySides out;
  std::vector<double> sx, sw, rx, rw;
  const double smax = std::sqrt(R);
  composite(clipped({0.0, 0.35, 0.7, 1.4, 2.0}, smax), order, 1.0 - 2.0 * a2, sx, sw);
  for (std::size_t i = 0; i < sx.size(); ++i) {
    const double s = sx[i];
    const double x1 = s * s;
    // dx_1 x_1^(2 alpha) = 2 s^(1 + 4 alpha) ds; a weighted first panel already holds s^(1 - 4 alpha).
    const bool weighted = i < order && 1.0 - 2.0 * a2 != 0.0;
    const double jac = weighted ? 2.0 * std::pow(s, 2.0 * a2) : 2.0 * std::pow(s, 1.0 + 2.0 * a2);
    const double rmax = std::sqrt(std::max(0.0, R * R - x1 * x1));
    composite(clipped({0.0, 0.5, 1.0, 2.0, 4.0}, rmax), order, 0.0, rx, rw);
    double inner = 0.0;
    for (std::size_t j = 0; j < rx.size(); ++j)
      for (double ph : phi) {
        const double x[3] = {x1, rx[j] * std::cos(ph), rx[j] * std::sin(ph)};
        const auto g = f.grad(x);
        inner += rw[j] * rx[j] * wphi * (g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
      }
    out.lhs += sw[i] * jac * inner;
  }

  // Hemisphere: x = R (sin v, cos v cos phi, cos v sin phi), dS = R^2 cos v dv dphi.
  std::vector<double> vx, vw;
  composite({0.0, std::numbers::pi / 8, std::numbers::pi / 4, std::numbers::pi / 2}, order, a2, vx, vw);
  for (std::size_t i = 0; i < vx.size(); ++i) {
    const double v = vx[i];
    const double x1w = i < order ? std::pow(R * std::sin(v) / v, a2) : std::pow(R * std::sin(v), a2);
    for (double ph : phi) {
      const double x[3] = {R * std::sin(v), R * std::cos(v) * std::cos(ph), R * std::cos(v) * std::sin(ph)};
      const auto g = f.grad(x);
      const double dn = (g[0] * x[0] + g[1] * x[1] + g[2] * x[2]) / R;
      out.rhs += vw[i] * wphi * x1w * R * R * std::cos(v) * f.u(x) * dn;
    }
  }

  // Face: minus int u(0, x~) nu(x~) dx~ over the disk of radius R.
  if (f.face_radius > 0.0) {
    composite(clipped({0.0, 0.5, 1.0, 2.0, 4.0}, std::min(R, f.face_radius)), order, 0.0, rx, rw);
    for (std::size_t j = 0; j < rx.size(); ++j)
      for (double ph : phi) {
        const double xf[2] = {rx[j] * std::cos(ph), rx[j] * std::sin(ph)};
        const double x[3] = {0.0, xf[0], xf[1]};
        out.rhs -= rw[j] * rx[j] * wphi * f.u(x) * f.nu(xf);
      }
  }
  return out;
}

}  // namespace

std::vector<std::string> neumann_scenarios() { return {"algebraic42", "bump31", "zero31", "zero42"}; }

std::vector<CheckReport> check_neumann_end_to_end(const std::string& scenario, const Tolerances& tol) {
  const Scenario s = make_scenario(scenario);
  const std::string prefix = "neumann/" + scenario + "/";
  std::vector<CheckReport> out;
  auto guarded = [&](const std::string& name, const std::string& key, const std::function<CheckReport()>& f) {
    const double t = tol.get(key);
    const auto start = std::chrono::steady_clock::now();
    try {
      CheckReport r = f();
      r.name = prefix + name;
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      out.push_back(failed_report(prefix + name, t, e));
    }
    out.back().runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  };
  std::optional<NeumannProblem> problem;
  try {
    problem.emplace(s.spec, s.data, s.quad);
  } catch (const std::exception& e) {
    out.push_back(failed_report(prefix + "setup", 0.0, e));
    return out;
  }
  guarded("flux", "neumann.flux", [&] { return flux_check(s, *problem, tol.get("neumann.flux")); });
  if (s.spec.n >= 2) guarded("off_face", "neumann.off_face", [&] { return off_face_check(s, tol.get("neumann.off_face")); });
  guarded("decay", "neumann.decay", [&] { return decay_check(s, *problem, tol.get("neumann.decay")); });
  guarded("residual", "neumann.residual", [&] { return residual_check(s, tol.get("neumann.residual")); });
  return out;
}

std::vector<std::string> energy_scenarios() { return {"analytic31", "bump31", "zero31"}; }

CheckReport check_energy_identity(const std::string& scenario, double R, const Tolerances& tol) {
  require(R > 0.0, ErrorCode::PreconditionViolation, "check_energy_identity: R must be positive");
  const double t = tol.get("energy");
  const DomainSpec spec{3, 1, {0.25}};
  const double alpha = spec.alpha[0];
  EnergyFields f;
  f.alpha = alpha;
  std::optional<NeumannProblem> problem;
  if (scenario == "analytic31") {
    f.u = [alpha](std::span<const double> x) { return std::pow(x[0], 1.0 - 2.0 * alpha); };
    f.grad = [alpha](std::span<const double> x) {
      return std::vector<double>{(1.0 - 2.0 * alpha) * std::pow(x[0], -2.0 * alpha), 0.0, 0.0};
    };
    // nu = 1 - 2 alpha, but u vanishes on the face.
    f.nu = [alpha](std::span<const double>) { return 1.0 - 2.0 * alpha; };
    f.face_radius = R;
  } else if (scenario == "zero31" || scenario == "bump31") {
    std::vector<BoundaryDatum> data;
    if (scenario == "bump31") data.push_back(BoundaryDatum::gaussian(0, 1.0, {0.0, 0.0}, 0.5).with_fitted_bound(spec, 0.5));
    QuadratureSpec quad;
    quad.base_order = 6;
    quad.target_rel_tol = 1e-3;
    problem.emplace(spec, data, quad);
    const NeumannProblem* p = &*problem;
    f.u = [p](std::span<const double> x) { return p->evaluate(x).u; };
    f.grad = [p](std::span<const double> x) {
      std::vector<double> g;
      for (const auto& c : p->gradient(x)) g.push_back(c.value);
      return g;
    };
    f.nu = [p](std::span<const double> xf) { return p->datum(0)(xf); };
    f.face_radius = scenario == "bump31" ? 8.5 * 0.5 * std::sqrt(2.0) : 0.0;
  } else {
    throw Error(ErrorCode::PreconditionViolation, "check_energy_identity: unknown scenario '" + scenario + "'");
  }

  const EnergySides coarse = energy_sides(f, R, 6, 4);
  const EnergySides fine = energy_sides(f, R, 10, 4);
  const double half = 0.5 * t;
  require(std::abs(fine.lhs - coarse.lhs) <= half * std::abs(fine.lhs) &&
              std::abs(fine.rhs - coarse.rhs) <= half * std::abs(fine.rhs),
          ErrorCode::GridTooCoarse,
          "check_energy_identity: sides moved by more than half the tolerance between grids (lhs " + fmt(coarse.lhs) +
              " -> " + fmt(fine.lhs) + ", rhs " + fmt(coarse.rhs) + " -> " + fmt(fine.rhs) + ")");
  const double big = std::max(std::abs(fine.lhs), std::abs(fine.rhs));
  const double mismatch = big > 0.0 ? (fine.lhs - fine.rhs) / big : 0.0;
  return make_report("energy/" + scenario, mismatch, 0.0, t,
                     "extended; lhs " + fmt(fine.lhs) + ", rhs " + fmt(fine.rhs));
}

}  // namespace lauricella
