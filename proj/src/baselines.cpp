#include "mnclust/baselines.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace mnclust {

namespace {

Mat column_distances(const Mat& cols) {
  const Eigen::Index t = cols.cols();
  Mat d = Mat::Zero(t, t);
  for (Eigen::Index i = 0; i < t; ++i)
    for (Eigen::Index j = i + 1; j < t; ++j) {
      const double v = (cols.col(i) - cols.col(j)).norm();
      d(i, j) = v;
      d(j, i) = v;
    }
  return d;
}

double pam_cost(const Mat& dist, const std::vector<int>& medoids) {
  double cost = 0.0;
  for (Eigen::Index t = 0; t < dist.rows(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (int m : medoids) best = std::min(best, dist(t, m));
    cost += best;
  }
  return cost;
}

std::vector<int> assign_to_medoids(const Mat& dist, const std::vector<int>& medoids) {
  std::vector<int> labels(static_cast<std::size_t>(dist.rows()), 0);
  for (Eigen::Index t = 0; t < dist.rows(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < medoids.size(); ++k)
      if (dist(t, medoids[k]) < best) {
        best = dist(t, medoids[k]);
        labels[static_cast<std::size_t>(t)] = static_cast<int>(k);
      }
  }
  return labels;
}

}  // namespace

std::vector<int> pam(const Mat& dist, int k) {
  const int t = static_cast<int>(dist.rows());
  // BUILD: greedily add the medoid that lowers total cost the most.
  std::vector<int> medoids;
  std::vector<char> used(static_cast<std::size_t>(t), 0);
  while (static_cast<int>(medoids.size()) < k) {
    int best_c = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int c = 0; c < t; ++c) {
      if (used[static_cast<std::size_t>(c)]) continue;
      medoids.push_back(c);
      const double cost = pam_cost(dist, medoids);
      medoids.pop_back();
      if (cost < best_cost) {
        best_cost = cost;
        best_c = c;
      }
    }
    medoids.push_back(best_c);
    used[static_cast<std::size_t>(best_c)] = 1;
  }
  // SWAP: steepest improving medoid/non-medoid exchange until none helps.
  double cur = pam_cost(dist, medoids);
  bool improved = true;
  while (improved) {
    improved = false;
    int swap_k = -1, swap_c = -1;
    double best_cost = cur;
    for (std::size_t m = 0; m < medoids.size(); ++m) {
      for (int c = 0; c < t; ++c) {
        if (used[static_cast<std::size_t>(c)]) continue;
        const int saved = medoids[m];
        medoids[m] = c;
        const double cost = pam_cost(dist, medoids);
        medoids[m] = saved;
        if (cost < best_cost - 1e-12) {
          best_cost = cost;
          swap_k = static_cast<int>(m);
          swap_c = c;
        }
      }
    }
    if (swap_k >= 0) {
      used[static_cast<std::size_t>(medoids[static_cast<std::size_t>(swap_k)])] = 0;
      medoids[static_cast<std::size_t>(swap_k)] = swap_c;
      used[static_cast<std::size_t>(swap_c)] = 1;
      cur = best_cost;
      improved = true;
    }
  }
  return assign_to_medoids(dist, medoids);
}

double mean_silhouette(const Mat& dist, const std::vector<int>& labels, int k) {
  const Eigen::Index t = dist.rows();
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
  for (int lab : labels) ++sizes[static_cast<std::size_t>(lab)];
  double acc = 0.0;
  for (Eigen::Index i = 0; i < t; ++i) {
    const int own = labels[static_cast<std::size_t>(i)];
    if (sizes[static_cast<std::size_t>(own)] <= 1) continue;  // singleton: s = 0
    std::vector<double> mean_to(static_cast<std::size_t>(k), 0.0);
    for (Eigen::Index j = 0; j < t; ++j)
      if (j != i) mean_to[static_cast<std::size_t>(labels[static_cast<std::size_t>(j)])] += dist(i, j);
    const double a =
        mean_to[static_cast<std::size_t>(own)] / static_cast<double>(sizes[static_cast<std::size_t>(own)] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (int c = 0; c < k; ++c) {
      if (c == own || sizes[static_cast<std::size_t>(c)] == 0) continue;
      b = std::min(b, mean_to[static_cast<std::size_t>(c)] /
                          static_cast<double>(sizes[static_cast<std::size_t>(c)]));
    }
    const double denom = std::max(a, b);
    acc += denom > 0.0 ? (b - a) / denom : 0.0;
  }
  return acc / static_cast<double>(t);
}

PamResult pam_silhouette(const CountMatrix& x, int k_min, int k_max) {
  const int t = static_cast<int>(x.len());
  if (t < 2) throw LengthMismatchError("pam_silhouette needs T >= 2");
  if (t == 2) return PamResult{{0, 1}, 2, true};
  const Mat dist = column_distances(x.entries.cast<double>());
  const int lo = std::max(2, k_min);
  const int hi = std::min(t - 1, k_max);
  PamResult best;
  double best_sil = -std::numeric_limits<double>::infinity();
  for (int k = lo; k <= hi; ++k) {
    std::vector<int> labels = pam(dist, k);
    const double sil = mean_silhouette(dist, labels, k);
    if (sil > best_sil) {
      best_sil = sil;
      best = PamResult{std::move(labels), k, false};
    }
  }
  if (best.labels.empty()) {  // empty admissible range
    best = PamResult{pam(dist, std::min(2, t)), 2, true};
  }
  return best;
}

int profile_likelihood_elbow(const Vec& singular_values, int k_max) {
  const int p = static_cast<int>(singular_values.size());
  if (p < 2) return 1;
  if (p == 2) {
    // Two singular values cannot support the two-group likelihood; use the
    // relative gap instead.
    return (k_max >= 2 && singular_values[1] > 0.05 * singular_values[0]) ? 2 : 1;
  }
  const int hi = std::min(k_max, p - 1);
  int best_q = 1;
  double best_ll = -std::numeric_limits<double>::infinity();
  for (int q = 1; q <= hi; ++q) {
    const double m1 = singular_values.head(q).mean();
    const double m2 = singular_values.tail(p - q).mean();
    double ss = 0.0;
    for (int i = 0; i < p; ++i) {
      const double mu = i < q ? m1 : m2;
      ss += (singular_values[i] - mu) * (singular_values[i] - mu);
    }
    const double var = std::max(ss / static_cast<double>(p), 1e-24);
    const double ll = -0.5 * static_cast<double>(p) * std::log(var);
    if (ll > best_ll) {
      best_ll = ll;
      best_q = q;
    }
  }
  return best_q;
}

std::vector<int> kmeans(const Mat& points, int k, std::uint64_t seed, int restarts) {
  const Eigen::Index t = points.cols();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<int> best_labels(static_cast<std::size_t>(t), 0);
  double best_inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    // k-means++ seeding.
    std::vector<int> centers_idx;
    centers_idx.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(t)));
    Vec d2 = Vec::Constant(t, std::numeric_limits<double>::infinity());
    while (static_cast<int>(centers_idx.size()) < k) {
      for (Eigen::Index i = 0; i < t; ++i)
        d2[i] = std::min(d2[i], (points.col(i) - points.col(centers_idx.back())).squaredNorm());
      const double total = d2.sum();
      int pick = 0;
      if (total <= 0.0) {
        pick = static_cast<int>(rng() % static_cast<std::uint64_t>(t));
      } else {
        double target = unif(rng) * total, acc = 0.0;
        for (Eigen::Index i = 0; i < t; ++i) {
          acc += d2[i];
          if (acc >= target) {
            pick = static_cast<int>(i);
            break;
          }
        }
      }
      centers_idx.push_back(pick);
    }
    Mat centers(points.rows(), k);
    for (int c = 0; c < k; ++c) centers.col(c) = points.col(centers_idx[static_cast<std::size_t>(c)]);

    std::vector<int> labels(static_cast<std::size_t>(t), 0);
    double inertia = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      inertia = 0.0;
      bool changed = false;
      for (Eigen::Index i = 0; i < t; ++i) {
        double best = std::numeric_limits<double>::infinity();
        int arg = 0;
        for (int c = 0; c < k; ++c) {
          const double v = (points.col(i) - centers.col(c)).squaredNorm();
          if (v < best) {
            best = v;
            arg = c;
          }
        }
        if (labels[static_cast<std::size_t>(i)] != arg) changed = true;
        labels[static_cast<std::size_t>(i)] = arg;
        inertia += best;
      }
      if (!changed && iter > 0) break;
      Mat sums = Mat::Zero(points.rows(), k);
      std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
      for (Eigen::Index i = 0; i < t; ++i) {
        sums.col(labels[static_cast<std::size_t>(i)]) += points.col(i);
        ++counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])];
      }
      for (int c = 0; c < k; ++c)
        if (counts[static_cast<std::size_t>(c)] > 0)
          centers.col(c) = sums.col(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
    }
    if (inertia < best_inertia) {
      best_inertia = inertia;
      best_labels = labels;
    }
  }
  return best_labels;
}

ElbowResult elbow_kmeans(const CountMatrix& x, int k_max, std::uint64_t seed) {
  const int maxk = static_cast<int>(std::min(x.dim(), x.len()));
  if (k_max < 1 || k_max > maxk)
    throw RankOutOfRangeError("k_max outside [1, " + std::to_string(maxk) + "]");
  const Mat m = x.entries.cast<double>();
  Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU);
  const int rank = profile_likelihood_elbow(svd.singularValues(), k_max);
  const Mat projected = svd.matrixU().leftCols(rank).transpose() * m;  // rank x T
  return ElbowResult{kmeans(projected, rank, seed, 10), rank};
}

}  // namespace mnclust
