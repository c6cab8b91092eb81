#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "lauricella/kernel.hpp"

namespace lauricella {

enum class DatumFamily { Zero, Algebraic, Gaussian, CompactBump, Tabulated, Custom };

std::string_view to_string(DatumFamily family);

/// Region of the face where a datum changes quickly: the integration grid is
/// graded geometrically around `center` down to the length `scale`.
struct Focus {
  std::vector<double> center;  ///< face coordinates
  double scale = 1.0;
};

/// Values on a tensor grid over the face coordinates, multilinearly
/// interpolated and zero outside the grid. `values` is row-major with the
/// last face coordinate varying fastest.
struct TabulatedGrid {
  std::vector<std::vector<double>> axes;
  std::vector<double> values;
};

/// Hints that let a user-supplied function take part in quadrature planning.
struct CustomShape {
  std::function<double(std::span<const double>)> value;
  std::vector<Focus> foci;
  /// Per face coordinate [lo, hi]; empty for unbounded support.
  std::vector<std::pair<double, double>> support;
  /// |nu| <= C |x|^(-decay) far out; only used when the support is unbounded.
  double decay = 0.0;
};

/// Neumann datum nu_k on the face x_k = 0 (k is 0-based). Face points are
/// written in the m-1 coordinates that remain after deleting x_k, in their
/// original order.
///
/// Every datum carries the bound
///   |nu(x~)| <= bound_c (1 + |x~|^2)^(-(1 - 2 alpha_k + bound_eps)/2),
/// which `certify` re-checks by sampling before any solve.
class BoundaryDatum {
 public:
  static BoundaryDatum zero(std::size_t face);
  /// amplitude (1 + |x~ - center|^2)^(-exponent/2).
  static BoundaryDatum algebraic(std::size_t face, double amplitude, double exponent, std::vector<double> center);
  /// The family matching the bound: exponent 1 - 2 alpha_k + eps, centered at 0,
  /// certified with c = |amplitude| and the same eps.
  static BoundaryDatum bound_matching(std::size_t face, const DomainSpec& spec, double amplitude, double eps);
  /// amplitude exp(-|x~ - center|^2 / (2 width^2)).
  static BoundaryDatum gaussian(std::size_t face, double amplitude, std::vector<double> center, double width);
  /// amplitude exp(1 - 1/(1 - |x~ - center|^2/radius^2)) inside the ball, 0 outside.
  static BoundaryDatum compact_bump(std::size_t face, double amplitude, std::vector<double> center, double radius);
  static BoundaryDatum tabulated(std::size_t face, TabulatedGrid grid, double bound_c, double bound_eps);
  static BoundaryDatum custom(std::size_t face, CustomShape shape, double bound_c, double bound_eps);

  double operator()(std::span<const double> x_face) const;

  std::size_t face() const { return face_; }
  DatumFamily family() const { return family_; }
  bool is_zero() const { return family_ == DatumFamily::Zero || amplitude_ == 0.0; }
  double bound_c() const { return bound_c_; }
  double bound_eps() const { return bound_eps_; }

  /// Copy with (c, eps) replaced.
  BoundaryDatum with_bound(double c, double eps) const;
  /// Copy with eps given and c set to 1.01 times the largest ratio
  /// |nu| / envelope seen on the certification samples.
  BoundaryDatum with_fitted_bound(const DomainSpec& spec, double eps) const;

  /// Throws UncertifiedDatum unless the bound holds on a radial sample grid
  /// reaching |x~| = 1e3 (and at every focus center).
  void certify(const DomainSpec& spec) const;

  std::vector<Focus> foci() const;
  /// Bounding box of the support in face coordinates; nullopt if unbounded.
  std::optional<std::vector<std::pair<double, double>>> support() const;
  /// Extra per-axis breakpoints (grid lines of tabulated data).
  std::vector<std::vector<double>> axis_breaks() const;
  /// Algebraic decay rate of |nu| used to shape the tail quadrature.
  double decay_exponent(const DomainSpec& spec) const;

 private:
  double envelope_ratio_max(const DomainSpec& spec) const;

  std::size_t face_ = 0;
  DatumFamily family_ = DatumFamily::Zero;
  double amplitude_ = 0.0;
  std::vector<double> center_;
  double width_ = 1.0;     // Gaussian width or bump radius
  double exponent_ = 1.0;  // algebraic family
  TabulatedGrid grid_;
  CustomShape custom_;
  double bound_c_ = 1.0;
  double bound_eps_ = 0.5;
};

}  // namespace lauricella
