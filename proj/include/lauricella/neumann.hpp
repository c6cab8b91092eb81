#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lauricella/datum.hpp"
#include "lauricella/errors.hpp"
#include "lauricella/hyperfun.hpp"
#include "lauricella/kernel.hpp"
#include "lauricella/quadrature.hpp"

namespace lauricella {

/// A face integral at the finest refinement level together with the
/// difference to the previous level.
struct FaceIntegral {
  double value = 0.0;
  double error = 0.0;
  std::size_t nodes = 0;  ///< tensor nodes at the finest level
};

struct PointFailure {
  ErrorCode code;
  std::string message;
};

/// u on a batch of points. Entries of failed points are NaN and carry the
/// error that stopped them; the other points are unaffected.
struct SolutionField {
  std::vector<Point> points;
  std::vector<double> values;
  std::vector<std::vector<double>> contributions;  ///< [point][face] I_j
  std::vector<double> errors;
  std::vector<std::optional<PointFailure>> failures;
  std::vector<std::vector<std::size_t>> nodes;  ///< [point][face] node counts
  std::vector<double> seconds;                  ///< wall time per point

  std::size_t failed() const;
};

/// Kernel pieces on one face S_j: the (n-1)-variable functions
///   F_A(beta; A_j; 2A_j), F_A(beta+1; A_j; 2A_j), F_A(beta+1; A_j + e_l; 2A_j + e_l)
/// evaluated at Phi_j = (-4 x_i xi_i / r_j^2)_(i != j).
class FaceKernel {
 public:
  FaceKernel(const DomainSpec& spec, std::size_t face, const EvalOptions& opts);

  /// Component -1 is q(x, xi); component l >= 0 is dq/dxi_l. x lies on S_j.
  void evaluate(std::span<const double> x, std::span<const double> xi, std::span<const int> components,
                std::span<double> out) const;

 private:
  double fa(const std::optional<LauricellaFA>& f, std::span<const double> phi) const;

  std::size_t face_;
  std::size_t m_;
  std::size_t n_;
  double beta_;
  double log_gamma_;
  std::optional<LauricellaFA> base_;
  std::optional<LauricellaFA> raised_;
  std::vector<std::optional<LauricellaFA>> raised_shift_;  // by global index l < n, l != face
};

/// The explicit Neumann solution
///
///   u(xi) = sum_j I_j(xi),
///   I_j(xi) = -gamma int_(S_j) nu_j(x~) x~^(2 alpha) r_j^(-2 beta) F_A^(n-1)(beta, A_j; 2A_j; Phi_j) dS_j,
///
/// for one data set. Every datum is certified on construction. Derivatives
/// of I_j are the face integrals of the analytic xi-gradient of q.
class NeumannProblem {
 public:
  /// At most one datum per face; faces without one get nu = 0.
  NeumannProblem(DomainSpec spec, std::vector<BoundaryDatum> data, QuadratureSpec quad = {}, EvalOptions opts = {});

  const DomainSpec& spec() const { return spec_; }
  const QuadratureSpec& quadrature() const { return quad_; }
  const BoundaryDatum& datum(std::size_t face) const { return data_.at(face); }

  /// I_j(xi). Points on the face S_j itself (xi_j = 0) are accepted; the
  /// weak singularity is resolved by grading the rule down to 1e-10.
  FaceIntegral face_integral(std::size_t j, std::span<const double> xi) const;
  /// dI_j/dxi_l at an interior point.
  FaceIntegral face_derivative(std::size_t j, std::size_t l, std::span<const double> xi) const;

  struct PointValue {
    double u = 0.0;
    double error = 0.0;
    std::vector<double> contributions;
    std::vector<std::size_t> nodes;
  };
  PointValue evaluate(std::span<const double> xi) const;

  /// All m components of grad u, each with its error estimate.
  std::vector<FaceIntegral> gradient(std::span<const double> xi) const;

  /// xi_k^(2 alpha_k) du/dxi_k.
  FaceIntegral weighted_flux(std::span<const double> xi, std::size_t k) const;

  /// Evaluator whose rules were planned once at an anchor point and are
  /// reused unchanged at every nearby point. Level -1 is the finest level.
  class Frozen {
   public:
    double u(std::span<const double> xi) const;
    std::vector<double> gradient(std::span<const double> xi) const;

   private:
    friend class NeumannProblem;
    const NeumannProblem* owner_ = nullptr;
    std::vector<std::optional<FaceQuadrature>> rules_;
    int level_ = -1;
  };
  Frozen frozen(std::span<const double> anchor, int level = -1) const;

  SolutionField solve(const std::vector<Point>& points, unsigned jobs = 1) const;

 private:
  void check_point(std::span<const double> xi, bool allow_face) const;
  std::vector<FaceIntegral> integrate(std::size_t j, std::span<const double> xi, std::span<const int> comps) const;
  std::vector<double> integrate_level(const FaceQuadrature& rule, int level, std::span<const double> xi,
                                      std::span<const int> comps, std::vector<double>* abs_sums) const;

  DomainSpec spec_;
  QuadratureSpec quad_;
  EvalOptions opts_;
  std::vector<BoundaryDatum> data_;
  std::vector<FaceKernel> kernels_;
};

FaceIntegral face_integral_Ij(std::size_t j, const BoundaryDatum& datum, std::span<const double> xi,
                              const DomainSpec& spec, const QuadratureSpec& quad = {});

SolutionField solve_u(const std::vector<BoundaryDatum>& data, const std::vector<Point>& points, const DomainSpec& spec,
                      const QuadratureSpec& quad = {}, unsigned jobs = 1);

FaceIntegral weighted_flux(const std::vector<BoundaryDatum>& data, std::span<const double> xi, std::size_t k,
                           const DomainSpec& spec, const QuadratureSpec& quad = {});

/// xi_l^(2 alpha_l) dI_k/dxi_l along the path that replaces coordinate l of
/// `base` by each entry of `path` (l != k, both < n; the datum lives on face k).
std::vector<double> off_face_flux_limit(const BoundaryDatum& datum, std::span<const double> base,
                                        std::span<const double> path, std::size_t l, std::size_t k,
                                        const DomainSpec& spec, const QuadratureSpec& quad = {});

}  // namespace lauricella
