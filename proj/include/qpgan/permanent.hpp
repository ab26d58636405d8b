#pragma once

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace qpgan {

// Ryser's formula with Gray-code subset iteration, O(2^k * k).
// Perm(M) = (-1)^k * sum_{S != empty} (-1)^|S| prod_i sum_{j in S} M(i,j).
// Perm of the 0x0 matrix is 1 by convention.
inline std::complex<double> permanent(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("permanent: matrix must be square");
  const int k = static_cast<int>(m.rows());
  if (k == 0) return {1.0, 0.0};
  if (k == 1) return m(0, 0);
  if (k > 62) throw std::invalid_argument("permanent: matrix too large");

  std::vector<std::complex<double>> rowsum(static_cast<std::size_t>(k),
                                           {0.0, 0.0});
  std::complex<double> total{0.0, 0.0};
  std::uint64_t prev_gray = 0;
  const std::uint64_t end = 1ULL << k;
  for (std::uint64_t idx = 1; idx < end; ++idx) {
    const std::uint64_t gray = idx ^ (idx >> 1);
    const std::uint64_t diff = gray ^ prev_gray;  // single bit
    const int j = std::countr_zero(diff);
    if (gray & diff) {
      for (int i = 0; i < k; ++i) rowsum[static_cast<std::size_t>(i)] += m(i, j);
    } else {
      for (int i = 0; i < k; ++i) rowsum[static_cast<std::size_t>(i)] -= m(i, j);
    }
    prev_gray = gray;
    std::complex<double> prod{1.0, 0.0};
    for (int i = 0; i < k; ++i) prod *= rowsum[static_cast<std::size_t>(i)];
    if (std::popcount(gray) & 1)
      total -= prod;
    else
      total += prod;
  }
  return (k & 1) ? -total : total;
}

}  // namespace qpgan
