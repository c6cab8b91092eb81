#pragma once

#include <cstddef>
#include <vector>

namespace lauricella {

/// Nodes and weights of an interpolatory rule on a finite interval.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Jacobi rule on [0,1] for the weight u^left_exp (1-u)^right_exp,
/// both exponents > -1. Built by Golub-Welsch.
QuadratureRule gauss_jacobi_unit(std::size_t order, double left_exp, double right_exp);

/// Gauss-Legendre rule on [0,1].
QuadratureRule gauss_legendre_unit(std::size_t order);

}  // namespace lauricella
