#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "lauricella/hyperfun.hpp"

namespace lauricella {

/// Hyperoctant { x in R^m : x_1..x_n > 0 } and the exponents of the
/// singular coefficients 2 alpha_j / x_j.
struct DomainSpec {
  int m = 3;
  int n = 1;
  std::vector<double> alpha{0.25};

  /// m > 2, 1 <= n <= m, 0 < 2 alpha_j < 1.
  void validate() const;
  double alpha_sum() const;
};

/// Coordinates of a point in R^m. Interior points have coords_i > 0 for i < n.
using Point = std::vector<double>;

struct KernelConstants {
  double beta = 0.0;
  double log_gamma = 0.0;  ///< ln(gamma); gamma is always positive

  double gamma() const;
};

/// beta = (m-2)/2 + sum alpha_j,
/// gamma = 2^(2 beta - m) Gamma(beta) / pi^(m/2) * prod Gamma(alpha_k)/Gamma(2 alpha_k).
KernelConstants kernel_constants(const DomainSpec& spec);

/// Fundamental solution
///
///   q(x, xi) = gamma r^(-2 beta) F_A^(n)(beta, alpha; 2 alpha; -4 x_1 xi_1 / r^2, ..., -4 x_n xi_n / r^2)
///
/// together with its xi-gradient and the restriction to the faces x_k = 0.
/// All F_A arguments are <= 0, so the integral representation covers every
/// point of the closed hyperoctant. The evaluators for the shifted parameter
/// sets used by the gradient are built once per instance.
class FundamentalSolution {
 public:
  explicit FundamentalSolution(DomainSpec spec, EvalOptions opts = {});

  double operator()(std::span<const double> x, std::span<const double> xi) const;

  /// q restricted to the face x_k = 0 (k is 0-based), evaluated with the
  /// (n-1)-variable function F_A^(n-1)(beta, A_k; 2 A_k; Phi_k).
  double on_face(std::size_t k, std::span<const double> x_face, std::span<const double> xi) const;

  /// Gradient in xi:
  ///   dq/dxi_i = 2 beta gamma r^(-2 beta - 2) [ (x_i - xi_i) F_A(beta+1, alpha; 2 alpha; sigma)
  ///              - [i < n] x_i F_A(beta+1, alpha + e_i; 2 alpha + e_i; sigma) ].
  std::vector<double> grad_xi(std::span<const double> x, std::span<const double> xi) const;

  /// The two F_A values entering grad_xi for one component; exposed for the
  /// face integrals, which reuse the same kernel pieces.
  struct GradientPieces {
    double prefactor;  ///< 2 beta gamma r^(-2 beta - 2)
    double raised;     ///< F_A(beta+1, alpha; 2 alpha; sigma)
  };
  GradientPieces gradient_pieces(std::span<const double> x, std::span<const double> xi) const;
  /// F_A(beta+1, alpha + e_i; 2 alpha + e_i; sigma) at the sigma of (x, xi).
  double raised_shifted(std::size_t i, std::span<const double> x, std::span<const double> xi) const;

  const DomainSpec& spec() const { return spec_; }
  const KernelConstants& constants() const { return constants_; }
  const EvalOptions& options() const { return opts_; }

 private:
  double squared_distance(std::span<const double> x, std::span<const double> xi) const;
  void check_points(std::span<const double> x, std::span<const double> xi) const;
  std::vector<double> arguments(std::span<const double> x, std::span<const double> xi, double r2) const;

  DomainSpec spec_;
  EvalOptions opts_;
  KernelConstants constants_;
  LauricellaFA base_;
  LauricellaFA raised_;
  std::vector<LauricellaFA> raised_shift_;
  std::vector<LauricellaFA> face_base_;  // per face, n-1 variables; empty when n == 1
};

double q(std::span<const double> x, std::span<const double> xi, const DomainSpec& spec, const EvalOptions& opts = {});
double q_face(std::size_t k, std::span<const double> x_face, std::span<const double> xi, const DomainSpec& spec,
              const EvalOptions& opts = {});
std::vector<double> grad_xi_q(std::span<const double> x, std::span<const double> xi, const DomainSpec& spec,
                              const EvalOptions& opts = {});

using ScalarField = std::function<double(std::span<const double>)>;

struct StencilResidual {
  double residual = 0.0;  ///< discrete E(u) at the point
  double scale = 0.0;     ///< sum of the magnitudes of the individual terms
};

/// Second-order central-difference approximation of
///   sum_i d^2u/dx_i^2 + sum_j (2 alpha_j / x_j) du/dx_j.
/// Requires p_j > 2h for j < n (StencilOutOfDomain otherwise).
StencilResidual pde_residual_terms(const ScalarField& field, std::span<const double> p, const DomainSpec& spec,
                                   double h);
double pde_residual(const ScalarField& field, std::span<const double> p, const DomainSpec& spec, double h);

}  // namespace lauricella
