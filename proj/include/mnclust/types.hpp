#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "mnclust/errors.hpp"

namespace mnclust {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using MatI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using VecI = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

// A d x T matrix of multinomial counts together with the per-column trial
// totals N_t.  Construct through validate_count_matrix so the invariants
// (non-negative entries, positive column sums) hold.
struct CountMatrix {
  MatI entries;       // d x T
  VecI trial_counts;  // length T, trial_counts[t] == entries.col(t).sum()

  Eigen::Index dim() const { return entries.rows(); }
  Eigen::Index len() const { return entries.cols(); }
  std::int64_t total() const { return trial_counts.sum(); }
};

// Column-stochastic non-negative matrix.  Columns sum to 1 within 1e-9.
class ProbabilityMatrix {
 public:
  ProbabilityMatrix() : m_(Mat::Ones(1, 1)) {}  // 1x1 placeholder
  explicit ProbabilityMatrix(Mat values) : m_(std::move(values)) { validate(); }

  const Mat& values() const { return m_; }
  Eigen::Index rows() const { return m_.rows(); }
  Eigen::Index cols() const { return m_.cols(); }
  Vec col(Eigen::Index j) const { return m_.col(j); }

 private:
  void validate() const;
  Mat m_;
};

// theta = (kappa, Q): a label for every observation plus K column-stochastic
// prototypes.  Labels are 0-based, values in [0, K).  Surjectivity is not
// required here; cluster_sizes()/is_surjective() let callers check it.
struct ClusterModel {
  std::vector<int> labels;
  ProbabilityMatrix prototypes;  // d x K
  int K = 1;

  std::vector<std::int64_t> cluster_sizes() const;
  bool is_surjective() const;
};

ClusterModel make_cluster_model(std::vector<int> labels, ProbabilityMatrix prototypes);

// Non-negative factor pair W (d x K) and H (K x T).
struct Factorization {
  Mat basis;    // W
  Mat weights;  // H
};

struct CriterionParams {
  double s = 1.0;
  double gamma = 1.0;
  double q = 1.0;
  double zero_threshold = 1e-6;  // tau: entry counts as zero when <= tau * column max
  double near_tie_rel = 1e-3;

  void validate() const;
};

struct NmfParams {
  int max_iters = 500;
  double tol = 1e-6;  // relative change of the objective
  int restarts = 4;
  std::uint64_t seed = 1;

  void validate() const;
};

struct SearchParams {
  double q = 1.0;
  int max_sweeps = 100;
  std::uint64_t seed = 1;

  void validate() const;
};

struct TruncationParams {
  double cap;  // C
  int rank;    // K

  void validate() const;
};

}  // namespace mnclust
