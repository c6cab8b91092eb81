#include "lauricella/halton.hpp"

#include "lauricella/errors.hpp"

namespace lauricella {

namespace {
constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
}

double radical_inverse(std::uint64_t i, unsigned base) {
  const double inv = 1.0 / base;
  double f = inv, r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

Halton::Halton(std::size_t dim, std::uint64_t skip) : skip_(skip) {
  require(dim >= 1 && dim <= std::size(kPrimes), ErrorCode::PreconditionViolation,
          "Halton: dimension must lie in [1, 16]");
  bases_.assign(kPrimes, kPrimes + dim);
}

void Halton::point(std::uint64_t index, double* out) const {
  for (std::size_t d = 0; d < bases_.size(); ++d) out[d] = radical_inverse(index + skip_, bases_[d]);
}

}  // namespace lauricella
