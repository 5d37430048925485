#include "mnclust/types.hpp"

#include <cmath>

namespace mnclust {

void ProbabilityMatrix::validate() const {
  if (m_.size() == 0) throw DimensionMismatchError("probability matrix must be non-empty");
  for (Eigen::Index j = 0; j < m_.cols(); ++j) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
      const double v = m_(i, j);
      if (v < 0.0 || !std::isfinite(v))
        throw DimensionMismatchError("probability matrix entry out of range at column " +
                                     std::to_string(j));
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw DimensionMismatchError("column " + std::to_string(j) +
                                   " sums to " + std::to_string(sum) + ", expected 1");
  }
}

std::vector<std::int64_t> ClusterModel::cluster_sizes() const {
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(K), 0);
  for (int lab : labels) ++sizes[static_cast<std::size_t>(lab)];
  return sizes;
}

bool ClusterModel::is_surjective() const {
  for (auto s : cluster_sizes())
    if (s == 0) return false;
  return true;
}

ClusterModel make_cluster_model(std::vector<int> labels, ProbabilityMatrix prototypes) {
  const int k = static_cast<int>(prototypes.cols());
  for (int lab : labels)
    if (lab < 0 || lab >= k)
      throw DimensionMismatchError("label " + std::to_string(lab) + " outside [0, " +
                                   std::to_string(k) + ")");
  return ClusterModel{std::move(labels), std::move(prototypes), k};
}

void CriterionParams::validate() const {
  if (!(s >= 0.0)) throw Error("criterion s must be >= 0");
  if (!(gamma > 0.0)) throw Error("criterion gamma must be > 0");
  if (!(q > 0.0 && q <= 1.0)) throw Error("criterion q must lie in (0, 1]");
  if (!(zero_threshold > 0.0 && zero_threshold < 1.0))
    throw Error("zero_threshold must lie in (0, 1)");
  if (!(near_tie_rel >= 0.0 && near_tie_rel <= 0.1))
    throw Error("near_tie_rel must lie in [0, 0.1]");
}

void NmfParams::validate() const {
  if (max_iters < 1) throw Error("nmf max_iters must be >= 1");
  if (!(tol > 0.0)) throw Error("nmf tol must be > 0");
  if (restarts < 0) throw Error("nmf restarts must be >= 0");
}

void SearchParams::validate() const {
  if (!(q > 0.0 && q <= 1.0)) throw Error("search q must lie in (0, 1]");
  if (max_sweeps < 1) throw Error("max_sweeps must be >= 1");
}

void TruncationParams::validate() const {
  if (!(cap > 0.0)) throw Error("truncation cap must be > 0");
  if (rank < 1) throw Error("truncation rank must be >= 1");
}

}  // namespace mnclust
