#include "mnclust/mlqe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace mnclust {

namespace {

// L* contribution of one cluster-count column.
double column_objective(const Eigen::Ref<const Vec>& col, double q) {
  const double total = col.sum();
  if (total <= 0.0) return 0.0;
  if (q == 1.0) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      const double c = col[i];
      if (c > 0.0) acc += c * std::log(c);
    }
    return acc - total * std::log(total);
  }
  // (sum_i c^(1/q))^q via log-sum-exp.
  double maxlog = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < col.size(); ++i)
    if (col[i] > 0.0) maxlog = std::max(maxlog, std::log(col[i]) / q);
  double accum = 0.0;
  for (Eigen::Index i = 0; i < col.size(); ++i)
    if (col[i] > 0.0) accum += std::exp(std::log(col[i]) / q - maxlog);
  return std::exp(q * (maxlog + std::log(accum)));
}

double total_objective(const Mat& m, double q) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < m.cols(); ++k) acc += column_objective(m.col(k), q);
  return acc;
}

void check_labels(const CountMatrix& x, const std::vector<int>& labels, int k) {
  if (static_cast<Eigen::Index>(labels.size()) != x.len())
    throw LengthMismatchError("labels length " + std::to_string(labels.size()) +
                              " does not match T = " + std::to_string(x.len()));
  for (int lab : labels)
    if (lab < 0 || lab >= k)
      throw DimensionMismatchError("label " + std::to_string(lab) + " outside [0, " +
                                   std::to_string(k) + ")");
}

}  // namespace

MatI cluster_counts(const CountMatrix& x, const std::vector<int>& labels, int k) {
  check_labels(x, labels, k);
  MatI m = MatI::Zero(x.dim(), k);
  for (Eigen::Index t = 0; t < x.len(); ++t)
    m.col(labels[static_cast<std::size_t>(t)]) += x.entries.col(t);
  return m;
}

ProbabilityMatrix closed_form_prototypes(const MatI& m, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw Error("q must lie in (0, 1]");
  Mat out(m.rows(), m.cols());
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    const std::int64_t total = m.col(k).sum();
    if (total <= 0) throw EmptyClusterError(static_cast<int>(k));
    if (q == 1.0) {
      out.col(k) = m.col(k).cast<double>() / static_cast<double>(total);
      continue;
    }
    const double maxc = static_cast<double>(m.col(k).maxCoeff());
    double sum = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double c = static_cast<double>(m(i, k));
      const double w = c > 0.0 ? std::exp((std::log(c) - std::log(maxc)) / q) : 0.0;
      out(i, k) = w;
      sum += w;
    }
    out.col(k) /= sum;
  }
  return ProbabilityMatrix(std::move(out));
}

double profile_objective(const MatI& m, double q) {
  if (!(q > 0.0 && q <= 1.0)) throw Error("q must lie in (0, 1]");
  return total_objective(m.cast<double>(), q);
}

RefineResult refine_labels(const CountMatrix& x, const ClusterModel& init,
                           const SearchParams& params) {
  params.validate();
  const int k = init.K;
  check_labels(x, init.labels, k);

  std::vector<int> labels = init.labels;
  Mat m = cluster_counts(x, labels, k).cast<double>();
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
  for (int lab : labels) ++sizes[static_cast<std::size_t>(lab)];

  Vec fk(k);
  for (int c = 0; c < k; ++c) fk[c] = column_objective(m.col(c), params.q);

  std::mt19937_64 rng(params.seed);
  std::vector<int> order(labels.size());
  std::iota(order.begin(), order.end(), 0);

  RefineResult res;
  bool moved_any = true;
  int sweep = 0;
  const Mat counts = x.entries.cast<double>();
  while (moved_any && sweep < params.max_sweeps) {
    ++sweep;
    moved_any = false;
    std::shuffle(order.begin(), order.end(), rng);
    for (int t : order) {
      const int cur = labels[static_cast<std::size_t>(t)];
      if (sizes[static_cast<std::size_t>(cur)] <= 1) continue;  // move would empty a cluster
      const Vec col_t = counts.col(t);
      const Vec src_without = m.col(cur) - col_t;
      const double f_src_without = column_objective(src_without, params.q);
      int best = cur;
      double best_gain = 0.0;
      for (int c = 0; c < k; ++c) {
        if (c == cur) continue;
        const double f_dst_with = column_objective(m.col(c) + col_t, params.q);
        const double gain = (f_src_without + f_dst_with) - (fk[cur] + fk[c]);
        if (gain > best_gain) {
          best_gain = gain;
          best = c;
        }
      }
      if (best != cur) {
        m.col(cur) = src_without;
        m.col(best) += col_t;
        fk[cur] = f_src_without;
        fk[best] = column_objective(m.col(best), params.q);
        --sizes[static_cast<std::size_t>(cur)];
        ++sizes[static_cast<std::size_t>(best)];
        labels[static_cast<std::size_t>(t)] = best;
        moved_any = true;
      }
    }
    // Rebuild cached sums once per sweep to keep float drift in check.
    m = cluster_counts(x, labels, k).cast<double>();
    for (int c = 0; c < k; ++c) fk[c] = column_objective(m.col(c), params.q);
  }

  res.sweeps = sweep;
  res.reached_fixed_point = !moved_any;
  res.objective = total_objective(m, params.q);

  const MatI final_counts = cluster_counts(x, labels, k);
  Mat protos(x.dim(), k);
  for (int c = 0; c < k; ++c) {
    if (final_counts.col(c).sum() == 0) {
      protos.col(c).setConstant(1.0 / static_cast<double>(x.dim()));
      continue;
    }
    MatI one = final_counts.col(c);
    protos.col(c) = closed_form_prototypes(one, params.q).values().col(0);
  }
  res.model = make_cluster_model(std::move(labels), ProbabilityMatrix(std::move(protos)));
  return res;
}

}  // namespace mnclust
