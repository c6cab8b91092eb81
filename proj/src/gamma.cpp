#include "lauricella/gamma.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "lauricella/errors.hpp"

namespace lauricella {

namespace {
constexpr std::uint32_t kDirectProductLimit = 64;
}

double LogGamma::value() const { return sign * std::exp(log_abs); }

bool is_nonpositive_integer(double a) {
  if (a > 0.5) return false;
  const double nearest = std::round(a);
  return std::abs(a - nearest) <= 8 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(a));
}

LogGamma ln_gamma(double a) {
  require(std::isfinite(a), ErrorCode::PreconditionViolation, "ln_gamma: non-finite argument");
  require(!is_nonpositive_integer(a), ErrorCode::ParameterPole,
          "ln_gamma: pole at a = " + std::to_string(a));
  int sign = 1;
  // lgamma_r leaves the global signgam alone, so concurrent calls are safe.
  const double log_abs = ::lgamma_r(a, &sign);
  return {log_abs, sign};
}

double pochhammer(double a, std::uint32_t k) {
  if (k == 0) return 1.0;
  if (k <= kDirectProductLimit || is_nonpositive_integer(a)) {
    double product = 1.0;
    for (std::uint32_t i = 0; i < k; ++i) {
      product *= a + i;
      if (product == 0.0) break;
    }
    return product;
  }
  // a + k is a pole only if a is a non-positive integer, handled above.
  const LogGamma upper = ln_gamma(a + k);
  const LogGamma lower = ln_gamma(a);
  return upper.sign * lower.sign * std::exp(upper.log_abs - lower.log_abs);
}

}  // namespace lauricella
