#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace lauricella {

/// Halton low-discrepancy sequence in up to 16 dimensions (bases are the
/// first primes). Point i is the vector of radical inverses of i + skip.
class Halton {
 public:
  explicit Halton(std::size_t dim, std::uint64_t skip = 1);

  std::size_t dimension() const { return bases_.size(); }
  /// Writes point `index` into out (size >= dimension()).
  void point(std::uint64_t index, double* out) const;

 private:
  std::vector<unsigned> bases_;
  std::uint64_t skip_;
};

double radical_inverse(std::uint64_t i, unsigned base);

}  // namespace lauricella
