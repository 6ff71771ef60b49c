#pragma once

#include <k3lat/lattice.hpp>

#include "oracles.hpp"

namespace testing_support {

inline k3lat::LatticePtr lattice_of(const oracle::Gram& g, std::vector<std::string> names = {}) {
  const std::size_t n = g.size();
  if (names.empty()) {
    for (std::size_t i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
  }
  k3lat::Matrix<k3lat::Scalar> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = k3lat::Scalar(static_cast<long>(g[i][j]));
  }
  return k3lat::make_lattice(std::move(names), std::move(m));
}

inline k3lat::DivisorClass class_of(const k3lat::LatticePtr& lat, const oracle::Vec& v) {
  std::vector<k3lat::Scalar> coords;
  for (auto x : v) coords.emplace_back(static_cast<long>(x));
  return k3lat::DivisorClass(lat, std::move(coords));
}

inline oracle::Vec vec_of(const k3lat::DivisorClass& c) {
  oracle::Vec out;
  for (const auto& z : c.integer_coords()) out.push_back(z.get_si());
  return out;
}

inline std::vector<oracle::Vec> vecs_of(const std::vector<std::vector<k3lat::Integer>>& vs) {
  std::vector<oracle::Vec> out;
  for (const auto& v : vs) {
    oracle::Vec w;
    for (const auto& z : v) w.push_back(z.get_si());
    out.push_back(std::move(w));
  }
  return out;
}

inline std::vector<oracle::Vec> vecs_of(const std::vector<k3lat::DivisorClass>& cs) {
  std::vector<oracle::Vec> out;
  for (const auto& c : cs) out.push_back(vec_of(c));
  return out;
}

}  // namespace testing_support
