#pragma once

#include <cstdint>

#include "eamp/linalg.hpp"
#include "eamp/rng.hpp"

namespace testutil {

inline eamp::DenseMatrix random_matrix(std::size_t rows, std::size_t cols,
                                       std::uint64_t seed, double lo = -1.0,
                                       double hi = 1.0) {
  eamp::SplitMix64 rng(seed);
  eamp::DenseMatrix m(rows, cols);
  for (double& v : m.data()) v = rng.uniform(lo, hi);
  return m;
}

inline eamp::Vector random_vector(std::size_t n, std::uint64_t seed, double lo = -1.0,
                                  double hi = 1.0) {
  eamp::SplitMix64 rng(seed);
  eamp::Vector v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

inline eamp::DenseMatrix random_spd(std::size_t n, std::uint64_t seed) {
  const eamp::DenseMatrix b = random_matrix(n, n, seed);
  eamp::DenseMatrix s = eamp::gram(b);
  for (std::size_t i = 0; i < n; ++i) s(i, i) += 0.5;  // keep well conditioned
  return s;
}

}  // namespace testutil
