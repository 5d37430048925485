#include "mnclust/metrics.hpp"

#include <cmath>
#include <limits>
#include <map>

namespace mnclust {

namespace {

double comb2(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw LengthMismatchError("label vectors differ in length");
  const std::size_t t = a.size();
  if (t < 2) throw LengthMismatchError("need at least two observations");

  std::map<int, int> ia, ib;
  for (int v : a) ia.emplace(v, 0);
  for (int v : b) ib.emplace(v, 0);
  int next = 0;
  for (auto& kv : ia) kv.second = next++;
  next = 0;
  for (auto& kv : ib) kv.second = next++;

  Eigen::MatrixXd cont = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(ia.size()),
                                               static_cast<Eigen::Index>(ib.size()));
  for (std::size_t i = 0; i < t; ++i) cont(ia[a[i]], ib[b[i]]) += 1.0;

  double sum_ij = 0.0;
  for (Eigen::Index i = 0; i < cont.rows(); ++i)
    for (Eigen::Index j = 0; j < cont.cols(); ++j) sum_ij += comb2(cont(i, j));
  double sum_a = 0.0, sum_b = 0.0;
  for (Eigen::Index i = 0; i < cont.rows(); ++i) sum_a += comb2(cont.row(i).sum());
  for (Eigen::Index j = 0; j < cont.cols(); ++j) sum_b += comb2(cont.col(j).sum());

  const double total = comb2(static_cast<double>(t));
  const double expected = sum_a * sum_b / total;
  const double denom = 0.5 * (sum_a + sum_b) - expected;
  if (denom == 0.0) return 1.0;  // both partitions degenerate and identical in structure
  return (sum_ij - expected) / denom;
}

double kl_divergence(const Vec& p, const Vec& q) {
  if (p.size() != q.size()) throw LengthMismatchError("kl_divergence: lengths differ");
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    acc += p[i] * std::log(p[i] / q[i]);
  }
  return acc;
}

double entropy(const Vec& p) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) acc -= p[i] * std::log(p[i]);
  return acc;
}

double weighted_discrepancy_phi(const ProbabilityMatrix& p_eval, const Mat& x_expected,
                                const VecI& trial_counts, const std::vector<int>& true_labels,
                                int k_true) {
  if (p_eval.rows() != x_expected.rows() || p_eval.cols() != x_expected.cols())
    throw DimensionMismatchError("phi: matrix shapes differ");
  if (trial_counts.size() != x_expected.cols() ||
      static_cast<Eigen::Index>(true_labels.size()) != x_expected.cols())
    throw DimensionMismatchError("phi: per-column data lengths differ");
  std::vector<double> nbar(static_cast<std::size_t>(k_true), 0.0);
  for (int lab : true_labels) {
    if (lab < 0 || lab >= k_true) throw DimensionMismatchError("phi: label outside [0, K)");
    nbar[static_cast<std::size_t>(lab)] += 1.0;
  }
  double acc = 0.0;
  for (Eigen::Index tcol = 0; tcol < x_expected.cols(); ++tcol) {
    const double nb = nbar[static_cast<std::size_t>(true_labels[static_cast<std::size_t>(tcol)])];
    const double w = 1.0 / (static_cast<double>(trial_counts[tcol]) * nb * nb);
    for (Eigen::Index i = 0; i < x_expected.rows(); ++i) {
      const double e = x_expected(i, tcol);
      if (e == 0.0) continue;
      acc -= w * e * std::log(p_eval.values()(i, tcol));
    }
  }
  return acc;
}

double theorem1_limit_constant(const Vec& z_bars, const Vec& n_bars, const Vec& lambda_bars) {
  if (z_bars.size() != n_bars.size() || z_bars.size() != lambda_bars.size())
    throw LengthMismatchError("limit constant: lengths differ");
  double acc = 0.0;
  for (Eigen::Index k = 0; k < z_bars.size(); ++k)
    acc += (z_bars[k] - 1.0) / (n_bars[k] * lambda_bars[k]);
  return 0.5 * acc;
}

}  // namespace mnclust
