#pragma once

#include "k3lat/kernels.hpp"

namespace k3lat::kernels::detail {
namespace {

// Internal linkage on purpose: avx2.cpp is built with -mavx2 and its copy
// must not be merged with the baseline one.

/// Reference loop over points [begin, end); also finishes the tails of the
/// vector variants.
inline void evaluate_range(const BatchArgs& a, std::size_t begin, std::size_t end) {
  const std::size_t n = a.dim;
  for (std::size_t p = begin; p < end; ++p) {
    std::int64_t q = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t y = 0;
      for (std::size_t j = 0; j < n; ++j) {
        y += std::int64_t{a.gram[i * n + j]} * a.points[j * a.count + p];
      }
      q += y * a.points[i * a.count + p];
    }
    a.squares[p] = q;
    for (std::size_t l = 0; l < a.n_linear; ++l) {
      std::int64_t s = 0;
      for (std::size_t i = 0; i < n; ++i) s += std::int64_t{a.linear[l * n + i]} * a.points[i * a.count + p];
      a.pairings[l * a.count + p] = s;
    }
  }
}

}  // namespace
}  // namespace k3lat::kernels::detail
