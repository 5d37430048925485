#pragma once

#include <random>
#include <vector>

#include "mnclust/types.hpp"

namespace mnclust::testing {

inline MatI make_counts(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  MatI m(static_cast<Eigen::Index>(rows.size()),
         static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (std::int64_t v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline Mat make_real(std::initializer_list<std::initializer_list<double>> rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()),
        static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// Random point on the simplex (Dirichlet(1,...,1)).
inline Vec random_simplex(int d, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = expo(rng);
  return v / v.sum();
}

// Random counts with at least one positive entry per column.
inline MatI random_counts(int d, int t, std::int64_t maxval, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> unif(0, maxval);
  MatI m(d, t);
  for (int j = 0; j < t; ++j) {
    std::int64_t sum = 0;
    for (int i = 0; i < d; ++i) {
      m(i, j) = unif(rng);
      sum += m(i, j);
    }
    if (sum == 0) m(rng() % static_cast<std::uint64_t>(d), j) = 1 + unif(rng);
  }
  return m;
}

}  // namespace mnclust::testing
