#include "mnclust/factorize.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <random>

#include "mnclust/lowrank.hpp"

namespace mnclust {

namespace {

constexpr double kFloor = 1e-12;  // keeps multiplicative updates away from exact zero

NmfOutcome nmf_single_run(const Mat& p, int k, const NmfParams& params, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 1.1);

  const Eigen::Index d = p.rows(), t = p.cols();
  Mat w(d, k), h(k, t);
  for (Eigen::Index j = 0; j < k; ++j)
    for (Eigen::Index i = 0; i < d; ++i) w(i, j) = unif(rng);
  for (Eigen::Index j = 0; j < t; ++j)
    for (Eigen::Index i = 0; i < k; ++i) h(i, j) = unif(rng);
  for (Eigen::Index j = 0; j < k; ++j) w.col(j) /= w.col(j).sum();

  NmfOutcome out;
  out.objective_history.reserve(static_cast<std::size_t>(params.max_iters));
  double prev = (p - w * h).norm();
  out.objective_history.push_back(prev);
  for (int it = 0; it < params.max_iters; ++it) {
    // Lee-Seung updates for the Frobenius loss.
    h = (h.array() * (w.transpose() * p).array() /
         ((w.transpose() * w) * h).array().max(kFloor))
            .max(kFloor)
            .matrix();
    w = (w.array() * (p * h.transpose()).array() /
         (w * (h * h.transpose())).array().max(kFloor))
            .max(kFloor)
            .matrix();
    const double obj = (p - w * h).norm();
    out.objective_history.push_back(obj);
    assert(obj <= prev + 1e-9 * std::max(1.0, prev) && "nmf objective increased");
    const double rel = std::abs(prev - obj) / std::max(prev, kFloor);
    prev = obj;
    if (rel <= params.tol) {
      out.converged = true;
      break;
    }
  }

  // Renormalize basis columns, absorbing the scale into H.
  for (Eigen::Index j = 0; j < k; ++j) {
    const double s = w.col(j).sum();
    w.col(j) /= s;
    h.row(j) *= s;
  }
  out.factors = Factorization{std::move(w), std::move(h)};
  out.objective = prev;
  return out;
}

}  // namespace

NmfOutcome nmf(const ProbabilityMatrix& p, int k, const NmfParams& params) {
  params.validate();
  const Eigen::Index maxk = std::min(p.rows(), p.cols());
  if (k < 1 || k > maxk)
    throw RankOutOfRangeError("nmf rank " + std::to_string(k) + " outside [1, " +
                              std::to_string(maxk) + "]");
  NmfOutcome best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r <= params.restarts; ++r) {
    NmfOutcome run = nmf_single_run(p.values(), k, params, params.seed + static_cast<std::uint64_t>(r));
    if (run.objective < best.objective) best = std::move(run);
  }
  return best;
}

ClusterModel map_assign(const Factorization& f, std::uint64_t seed) {
  const Eigen::Index k = f.weights.rows(), t = f.weights.cols();
  if (f.basis.cols() != k) throw DimensionMismatchError("factor shapes disagree");
  std::mt19937_64 rng(seed);
  std::vector<int> labels(static_cast<std::size_t>(t));
  std::vector<int> tied;
  for (Eigen::Index j = 0; j < t; ++j) {
    const double top = f.weights.col(j).maxCoeff();
    tied.clear();
    for (Eigen::Index i = 0; i < k; ++i)
      if (f.weights(i, j) == top) tied.push_back(static_cast<int>(i));
    if (tied.size() == 1) {
      labels[static_cast<std::size_t>(j)] = tied.front();
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, tied.size() - 1);
      labels[static_cast<std::size_t>(j)] = tied[pick(rng)];
    }
  }
  Mat w = f.basis;
  for (Eigen::Index j = 0; j < w.cols(); ++j) w.col(j) /= w.col(j).sum();
  return make_cluster_model(std::move(labels), ProbabilityMatrix(std::move(w)));
}

PreliminaryEstimate preliminary_estimate(const CountMatrix& x, int k, const NmfParams& params) {
  const Mat projected = reduced_rank_projection(x.entries.cast<double>(), k);
  const ProbabilityMatrix p = normalize_columns(clip_negatives(projected));
  NmfOutcome fit = nmf(p, k, params);
  ClusterModel model = map_assign(fit.factors, params.seed);
  return PreliminaryEstimate{std::move(model), fit.converged, fit.objective};
}

}  // namespace mnclust
