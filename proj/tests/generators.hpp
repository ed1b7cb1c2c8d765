#pragma once

// Seeded random inputs for property tests.

#include <affcomp/linalg.hpp>

#include <random>

namespace gen {

using affcomp::Matrix;
using affcomp::Scalar;
using affcomp::ScalarDomain;

/// Uniform over a finite field; small rationals in each component for quaternions.
inline Scalar scalar(const ScalarDomain& d, std::mt19937_64& rng) {
  if (d.is_finite()) return d.element(static_cast<std::uint32_t>(rng() % *d.order()));
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  auto r = [&]() -> mpq_class { return mpq_class(num(rng)) / den(rng); };
  return d.quaternion(r(), r(), r(), r());
}

inline Matrix matrix(const ScalarDomain& d, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  Matrix m(d, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = scalar(d, rng);
  return m;
}

inline Matrix invertible(const ScalarDomain& d, std::size_t n, std::mt19937_64& rng) {
  while (true) {
    Matrix m = matrix(d, n, n, rng);
    if (affcomp::is_invertible(m)) return m;
  }
}

}  // namespace gen
