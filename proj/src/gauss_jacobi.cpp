#include "lauricella/gauss_jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "lauricella/errors.hpp"
#include "lauricella/gamma.hpp"

namespace lauricella {

QuadratureRule gauss_jacobi_unit(std::size_t order, double left_exp, double right_exp) {
  require(order >= 1, ErrorCode::PreconditionViolation, "gauss_jacobi: order must be >= 1");
  require(left_exp > -1.0 && right_exp > -1.0, ErrorCode::PreconditionViolation,
          "gauss_jacobi: weight exponents must exceed -1");

  // Jacobi polynomials on [-1,1] with weight (1-x)^a (1+x)^b; x = 2u - 1.
  const double a = right_exp;
  const double b = left_exp;
  const double ab = a + b;
  const auto n = static_cast<Eigen::Index>(order);

  Eigen::VectorXd diag(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 1);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double s = 2.0 * k + ab;
    if (k == 0) {
      diag(k) = (b - a) / (ab + 2.0);
    } else {
      diag(k) = (b * b - a * a) / (s * (s + 2.0));
    }
  }
  for (Eigen::Index k = 1; k < n; ++k) {
    const double kd = static_cast<double>(k);
    const double s = 2.0 * kd + ab;
    double v;
    if (k == 1) {
      // (1 + a + b) cancels between numerator and denominator.
      v = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      v = 4.0 * kd * (kd + a) * (kd + b) * (kd + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub(k - 1) = std::sqrt(v);
  }

  // Total mass of the weight on [0,1]: B(b+1, a+1).
  const LogGamma g1 = ln_gamma(a + 1.0);
  const LogGamma g2 = ln_gamma(b + 1.0);
  const LogGamma g3 = ln_gamma(ab + 2.0);
  const double mass = std::exp(g1.log_abs + g2.log_abs - g3.log_abs);

  QuadratureRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  if (n == 1) {
    rule.nodes[0] = 0.5 * (diag(0) + 1.0);
    rule.weights[0] = mass;
    return rule;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  require(solver.info() == Eigen::Success, ErrorCode::NonConvergence,
          "gauss_jacobi: tridiagonal eigensolver failed");
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[i] = 0.5 * (solver.eigenvalues()(i) + 1.0);
    rule.weights[i] = mass * v0 * v0;
  }
  return rule;
}

QuadratureRule gauss_legendre_unit(std::size_t order) { return gauss_jacobi_unit(order, 0.0, 0.0); }

}  // namespace lauricella
