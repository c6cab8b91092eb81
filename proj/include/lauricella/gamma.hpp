#pragma once

#include <cstdint>

namespace lauricella {

/// ln|Gamma(a)| together with the sign of Gamma(a).
struct LogGamma {
  double log_abs = 0.0;
  int sign = 1;

  double value() const;
};

/// Throws ParameterPole for a in {0, -1, -2, ...}.
LogGamma ln_gamma(double a);

/// Rising factorial (a)_k = Gamma(a+k)/Gamma(a). Direct product for small k
/// (and whenever a is a non-positive integer); log-gamma otherwise.
double pochhammer(double a, std::uint32_t k);

/// True when a is within a few ulps of 0, -1, -2, ...
bool is_nonpositive_integer(double a);

}  // namespace lauricella
