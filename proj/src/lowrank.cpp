#include "mnclust/lowrank.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

namespace mnclust {

Mat reduced_rank_projection(const Mat& m, int k) {
  const Eigen::Index maxk = std::min(m.rows(), m.cols());
  if (k < 1 || k > maxk)
    throw RankOutOfRangeError("rank " + std::to_string(k) + " outside [1, " +
                              std::to_string(maxk) + "]");
  {
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Mat out = svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal() *
              svd.matrixV().leftCols(k).transpose();
    if (out.allFinite()) return out;
  }
  // BDCSVD can produce NaNs on some rank-deficient inputs (Eigen 3.4 deflation
  // corner case); Jacobi is slower but dependable.
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU().leftCols(k) * svd.singularValues().head(k).asDiagonal() *
         svd.matrixV().leftCols(k).transpose();
}

Mat clip_negatives(const Mat& m) { return m.cwiseMax(0.0); }

ProbabilityMatrix normalize_columns(const Mat& m) {
  Mat out(m.rows(), m.cols());
  const double uniform = 1.0 / static_cast<double>(m.rows());
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double sum = m.col(j).sum();
    if (sum < 1e-12)
      out.col(j).setConstant(uniform);
    else
      out.col(j) = m.col(j) / sum;
  }
  return ProbabilityMatrix(std::move(out));
}

MatI truncate_counts(const CountMatrix& x, double cap) {
  if (!(cap > 0.0)) throw Error("truncation cap must be > 0");
  const auto c = static_cast<std::int64_t>(std::floor(cap));
  return x.entries.unaryExpr([c](std::int64_t v) { return std::min(v, c); });
}

double projection_mse(const Mat& estimate, const Mat& truth) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols())
    throw DimensionMismatchError("projection_mse: shapes differ");
  return (estimate - truth).squaredNorm() /
         static_cast<double>(estimate.rows() * estimate.cols());
}

}  // namespace mnclust
