#pragma once

#include "mnclust/types.hpp"

namespace mnclust {

// Best rank-k approximation by truncated SVD (Frobenius-optimal).
// Throws RankOutOfRangeError unless 1 <= k <= min(rows, cols).
Mat reduced_rank_projection(const Mat& m, int k);

// Entry-wise max(m, 0).
Mat clip_negatives(const Mat& m);

// Divides each column by its sum; a column whose sum falls below 1e-12 is
// replaced by the uniform vector.
ProbabilityMatrix normalize_columns(const Mat& m);

// Entry-wise min with cap.
MatI truncate_counts(const CountMatrix& x, double cap);

// (1 / (d*T)) * ||estimate - truth||_F^2.
double projection_mse(const Mat& estimate, const Mat& truth);

}  // namespace mnclust
