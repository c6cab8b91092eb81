#include "lauricella/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "lauricella/errors.hpp"
#include "lauricella/gauss_jacobi.hpp"

namespace lauricella {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct AxisFocus {
  double center;
  double scale;
};

struct AxisPlan {
  double lo = -kInf;
  double hi = kInf;
  double weight_exp = 0.0;  // x^weight_exp on half axes
  std::vector<AxisFocus> foci;
  std::vector<double> mandatory;
};

struct RuleCache {
  QuadratureRule legendre;
  QuadratureRule jacobi_left;   // weight u^weight_exp
};

double local_width(const std::vector<AxisFocus>& foci, double x) {
  double g = kInf;
  for (const auto& f : foci) g = std::min(g, std::max(f.scale, std::abs(x - f.center)));
  return g;
}

std::vector<double> breakpoints(const AxisPlan& plan, double core_lo, double core_hi) {
  struct Cand {
    double x;
    bool keep;
  };
  std::vector<Cand> c{{core_lo, true}, {core_hi, true}};
  const double span = core_hi - core_lo;
  for (double x : plan.mandatory)
    if (x > core_lo && x < core_hi) c.push_back({x, true});
  for (const auto& f : plan.foci) {
    if (f.center > core_lo && f.center < core_hi) c.push_back({f.center, true});
    for (double d = f.scale; d <= 2 * span; d *= 2) {
      for (double x : {f.center - d, f.center + d})
        if (x > core_lo && x < core_hi) c.push_back({x, false});
    }
  }
  std::sort(c.begin(), c.end(), [](const Cand& a, const Cand& b) { return a.x < b.x || (a.x == b.x && a.keep > b.keep); });

  std::vector<double> out;
  const double tiny = 1e-14 * std::max(1.0, std::max(std::abs(core_lo), std::abs(core_hi)));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!out.empty() && c[i].x - out.back() <= tiny) continue;
    if (!c[i].keep && !out.empty() && c[i].x - out.back() < 0.4 * local_width(plan.foci, c[i].x)) continue;
    out.push_back(c[i].x);
  }
  // A kept mandatory point may sit just after a pruned-in neighbour; that only
  // creates a narrow panel, which is harmless.
  return out;
}

void append_panel(AxisRule& rule, const RuleCache& rc, double a, double b, int level, double weight_exp,
                  bool jacobi_first) {
  const int pieces = 1 << level;
  const double h = (b - a) / pieces;
  for (int p = 0; p < pieces; ++p) {
    const double lo = a + p * h;
    if (p == 0 && jacobi_first) {
      // int_0^h x^e g(x) dx = h^(1+e) int_0^1 u^e g(h u) du
      const double scale = std::pow(h, 1.0 + weight_exp);
      for (std::size_t i = 0; i < rc.jacobi_left.size(); ++i) {
        rule.nodes.push_back(h * rc.jacobi_left.nodes[i]);
        rule.weights.push_back(scale * rc.jacobi_left.weights[i]);
      }
      continue;
    }
    for (std::size_t i = 0; i < rc.legendre.size(); ++i) {
      const double x = lo + h * rc.legendre.nodes[i];
      double w = h * rc.legendre.weights[i];
      if (weight_exp != 0.0) w *= std::pow(x, weight_exp);
      rule.nodes.push_back(x);
      rule.weights.push_back(w);
    }
  }
}

// Radial rule for a far-field block: s in (0, 1] with s -> 0 at infinity.
// Weights carry the Jacobian, radius^(d - 1) from the ratio coordinates and
// radius^growth from the half-axis weights; the integrand times all of that
// behaves like s^end_exp near s = 0, which the Gauss-Jacobi piece absorbs.
AxisRule radial_rule(const QuadratureSpec& quad, double R, std::size_t d, double growth, double end_exp, int level) {
  const auto order = static_cast<std::size_t>(quad.base_order);
  const QuadratureRule gl = gauss_legendre_unit(order);
  const QuadratureRule gj = gauss_jacobi_unit(order, end_exp, 0.0);
  AxisRule rule;
  auto push = [&](double s, double w) {
    double x, jac;
    if (quad.transform == TailTransform::TangentMap) {
      const double th = 0.5 * std::numbers::pi * s;
      const double sn = std::sin(th);
      x = R * (1.0 + std::cos(th) / sn);
      jac = R * 0.5 * std::numbers::pi / (sn * sn);
    } else {
      x = R / s;
      jac = R / (s * s);
    }
    rule.nodes.push_back(x);
    rule.weights.push_back(w * jac * std::pow(x, static_cast<double>(d - 1) + growth));
  };
  const int pieces = 1 << level;
  const double h = 1.0 / pieces;
  for (int p = 0; p < pieces; ++p) {
    if (p == 0) {
      // s = h v; the weight v^end_exp built into the rule is divided back out.
      for (std::size_t i = 0; i < gj.size(); ++i) {
        const double v = gj.nodes[i];
        push(h * v, h * gj.weights[i] / std::pow(v, end_exp));
      }
    } else {
      for (std::size_t i = 0; i < gl.size(); ++i) push((p + gl.nodes[i]) * h, h * gl.weights[i]);
    }
  }
  return rule;
}

AxisRule build_axis(const AxisPlan& plan, const QuadratureSpec& quad, int level) {
  AxisRule rule;
  if (!(plan.hi > plan.lo)) return rule;
  const auto order = static_cast<std::size_t>(quad.base_order);
  RuleCache rc;
  rc.legendre = gauss_legendre_unit(order);
  const bool half = plan.weight_exp != 0.0 && plan.lo == 0.0;
  if (half) rc.jacobi_left = gauss_jacobi_unit(order, plan.weight_exp, 0.0);
  const auto cuts = breakpoints(plan, plan.lo, plan.hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    append_panel(rule, rc, cuts[i], cuts[i + 1], level, plan.weight_exp, half && i == 0);
  return rule;
}

// Ratio coordinate v_b in [-1, 1], or [0, 1] with weight v^weight_exp on half axes.
AxisRule ratio_rule(const QuadratureSpec& quad, bool half, double weight_exp, int level) {
  AxisPlan plan;
  plan.lo = half ? 0.0 : -1.0;
  plan.hi = 1.0;
  plan.weight_exp = half ? weight_exp : 0.0;
  plan.foci.push_back({0.0, 1.0});
  return build_axis(plan, quad, level);
}

}  // namespace

std::string_view to_string(TailTransform transform) {
  return transform == TailTransform::TangentMap ? "tangent" : "rational";
}

void QuadratureSpec::validate() const {
  require(base_order >= 4, ErrorCode::PreconditionViolation, "QuadratureSpec: base_order must be >= 4");
  require(base_order <= 64, ErrorCode::PreconditionViolation, "QuadratureSpec: base_order must be <= 64");
  require(refinement_levels >= 1 && refinement_levels <= 4, ErrorCode::PreconditionViolation,
          "QuadratureSpec: refinement_levels must lie in [1, 4]");
  require(target_rel_tol > 0.0, ErrorCode::PreconditionViolation, "QuadratureSpec: target_rel_tol must be > 0");
}

FaceQuadrature::FaceQuadrature(const DomainSpec& spec, std::size_t face, const BoundaryDatum& datum,
                               std::span<const double> anchor, const QuadratureSpec& quad)
    : face_(face), m_(static_cast<std::size_t>(spec.m)) {
  spec.validate();
  quad.validate();
  require(face < static_cast<std::size_t>(spec.n), ErrorCode::PreconditionViolation,
          "FaceQuadrature: face index out of range");
  require(anchor.size() == m_, ErrorCode::PreconditionViolation, "FaceQuadrature: anchor must have m coordinates");

  const double beta = kernel_constants(spec).beta;
  double size = 1.0;
  for (double v : anchor) size += std::abs(v);
  const double near_scale = std::max(anchor[face], 1e-10 * size);
  const auto support = datum.support();
  const auto breaks = datum.axis_breaks();
  const auto dfoci = datum.foci();
  const std::size_t d = m_ - 1;

  std::vector<AxisPlan> plans;
  double reach = 1.0;
  for (std::size_t a = 0; a < d; ++a) {
    const std::size_t g = global_index(a);
    AxisPlan p;
    if (g < static_cast<std::size_t>(spec.n)) {
      p.lo = 0.0;
      p.weight_exp = 2.0 * spec.alpha[g];
    }
    p.foci.push_back({anchor[g], near_scale});
    for (const auto& f : dfoci)
      if (a < f.center.size()) p.foci.push_back({f.center[a], f.scale});
    for (const auto& f : p.foci) reach = std::max(reach, std::abs(f.center) + f.scale);
    if (a < breaks.size()) p.mandatory = breaks[a];
    if (support) {
      p.lo = std::max(p.lo, (*support)[a].first);
      p.hi = (*support)[a].second;
    }
    plans.push_back(std::move(p));
  }

  // Unbounded data: core cube of half-width R plus one pyramid per direction.
  const double R = 4.0 * reach;
  double growth = 0.0;
  if (!support)
    for (auto& p : plans) {
      p.hi = R;
      if (p.lo != 0.0) p.lo = -R;
      growth += p.weight_exp;
    }
  // nu ~ |x|^-decay and r^(-2 beta) give the radial exponent Q.
  const double Q = 2.0 * beta + datum.decay_exponent(spec);
  const double end_exp = Q - static_cast<double>(d) - 1.0 - growth;
  require(support.has_value() || end_exp > -1.0, ErrorCode::PreconditionViolation,
          "FaceQuadrature: datum decays too slowly for the face integral to converge");

  for (int level = 0; level <= quad.refinement_levels; ++level) {
    std::vector<QuadratureBlock> blocks;
    QuadratureBlock core;
    for (const auto& p : plans) core.axes.push_back(build_axis(p, quad, level));
    blocks.push_back(std::move(core));
    if (!support) {
      const AxisRule radial = radial_rule(quad, R, d, growth, end_exp, level);
      for (std::size_t a = 0; a < d; ++a) {
        for (int sign : {1, -1}) {
          if (sign < 0 && plans[a].lo == 0.0) continue;
          QuadratureBlock far;
          far.far_field = true;
          far.radial = a;
          far.sign = sign;
          far.axes.push_back(radial);
          for (std::size_t b = 0; b < d; ++b)
            if (b != a) far.axes.push_back(ratio_rule(quad, plans[b].lo == 0.0, plans[b].weight_exp, level));
          blocks.push_back(std::move(far));
        }
      }
    }
    levels_.push_back(std::move(blocks));
  }
}

std::size_t FaceQuadrature::node_count(int level) const {
  std::size_t total = 0;
  for (const auto& block : blocks(level)) {
    std::size_t n = 1;
    for (const auto& a : block.axes) n *= a.nodes.size();
    total += n;
  }
  return total;
}

}  // namespace lauricella
