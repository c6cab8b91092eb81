#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "lauricella/datum.hpp"
#include "lauricella/kernel.hpp"

namespace lauricella {

/// Radial map of the far field, s in (0, 1]: x = R (1 + cot(pi s / 2)) or x = R / s.
enum class TailTransform { TangentMap, RationalMap };

std::string_view to_string(TailTransform transform);

struct QuadratureSpec {
  TailTransform transform = TailTransform::TangentMap;
  int base_order = 8;         ///< Gauss nodes per panel
  int refinement_levels = 1;  ///< number of halvings after the base level
  double target_rel_tol = 1e-6;

  /// base_order >= 4, 1 <= refinement_levels <= 4, target_rel_tol > 0.
  void validate() const;
};

/// One-dimensional rule. Weights include the factor x^(2 alpha_i) on half
/// axes; on the radial axis of a far-field block they also include the
/// Jacobian, so nodes there are the radius |x_a| itself.
struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Tensor block of a face rule. The core block uses face coordinates
/// directly. A far-field block covers the pyramid |x_a| >= R,
/// |x_b| <= |x_a| in direction sign * e_a: local axis 0 is the radius and
/// the others are the ratios v_b = x_b / |x_a|.
struct QuadratureBlock {
  std::vector<AxisRule> axes;
  bool far_field = false;
  std::size_t radial = 0;
  int sign = 1;
};

/// Rule over the face S_j = {x_j = 0}, planned around an anchor point xi.
/// Inside the support box of the datum, or the cube |x~|_inf <= R when the
/// support is unbounded, every axis is split into panels graded
/// geometrically (ratio 2) toward the projection of xi, with smallest panel
/// xi_j, and toward the datum's foci. Half axes start with a Gauss-Jacobi
/// panel for the weight x^(2 alpha_i). Outside the cube the integrand decays
/// like |x~|^(-Q); each pyramid block integrates its radial variable with a
/// Gauss-Jacobi weight matched to Q, which leaves a smooth remainder.
///
/// Level l halves every panel l times. The rule can be reused for points
/// near the anchor, which keeps finite-difference stencils free of
/// quadrature noise.
class FaceQuadrature {
 public:
  FaceQuadrature(const DomainSpec& spec, std::size_t face, const BoundaryDatum& datum, std::span<const double> anchor,
                 const QuadratureSpec& quad);

  std::size_t face() const { return face_; }
  int levels() const { return static_cast<int>(levels_.size()); }
  const std::vector<QuadratureBlock>& blocks(int level) const { return levels_.at(static_cast<std::size_t>(level)); }
  std::size_t node_count(int level) const;
  /// Global coordinate index of face axis a.
  std::size_t global_index(std::size_t a) const { return a < face_ ? a : a + 1; }

  /// Calls f(x_full, x_face, weight) for every tensor node of a level;
  /// x_full has m coordinates with x_full[face] = 0. Nodes are visited in a
  /// fixed order.
  template <class F>
  void for_each(int level, F&& f) const;

 private:
  std::size_t face_;
  std::size_t m_;
  std::vector<std::vector<QuadratureBlock>> levels_;
};

template <class F>
void FaceQuadrature::for_each(int level, F&& f) const {
  std::vector<double> full(m_, 0.0);
  for (const QuadratureBlock& block : blocks(level)) {
    const auto& ax = block.axes;
    const std::size_t d = ax.size();
    bool empty = false;
    for (const auto& a : ax) empty = empty || a.nodes.empty();
    if (empty) continue;
    std::vector<std::size_t> idx(d, 0);
    std::vector<double> local(d), wprefix(d + 1, 1.0);
    std::size_t changed = 0;
    while (true) {
      for (std::size_t a = changed; a < d; ++a) wprefix[a + 1] = wprefix[a] * ax[a].weights[idx[a]];
      if (!block.far_field) {
        for (std::size_t a = changed; a < d; ++a) local[a] = ax[a].nodes[idx[a]];
      } else {
        const double radius = ax[0].nodes[idx[0]];
        for (std::size_t a = 1, b = 0; a < d; ++a, ++b) {
          if (b == block.radial) ++b;
          local[b] = radius * ax[a].nodes[idx[a]];
        }
        local[block.radial] = block.sign * radius;
      }
      for (std::size_t a = 0; a < d; ++a) full[global_index(a)] = local[a];
      f(std::span<const double>(full), std::span<const double>(local), wprefix[d]);
      std::size_t a = d;
      while (a > 0) {
        --a;
        if (++idx[a] < ax[a].nodes.size()) break;
        idx[a] = 0;
      }
      if (a == 0 && idx[0] == 0) break;
      changed = a;
    }
  }
}

}  // namespace lauricella
