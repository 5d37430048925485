#include "mnclust/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "mnclust/factorize.hpp"
#include "mnclust/mlqe.hpp"
#include "mnclust/threading.hpp"
#include "mnclust/version.hpp"

namespace mnclust {

namespace {

constexpr double kLogGuard = 1e-300;

void check_model_against(const CountMatrix& x, const ClusterModel& model) {
  if (model.prototypes.rows() != x.dim())
    throw DimensionMismatchError("prototype dimension does not match data");
  if (static_cast<Eigen::Index>(model.labels.size()) != x.len())
    throw DimensionMismatchError("label count does not match data");
}

}  // namespace

std::vector<int> z_counts(const ClusterModel& model, double zero_threshold) {
  const Mat& q = model.prototypes.values();
  std::vector<int> z(static_cast<std::size_t>(model.K), 0);
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const double cutoff = zero_threshold * q.col(k).maxCoeff();
    int count = 0;
    for (Eigen::Index i = 0; i < q.rows(); ++i)
      if (q(i, k) > cutoff) ++count;
    z[static_cast<std::size_t>(k)] = count;
  }
  return z;
}

std::vector<std::int64_t> n_counts(const CountMatrix& x, const std::vector<int>& labels, int k) {
  if (static_cast<Eigen::Index>(labels.size()) != x.len())
    throw LengthMismatchError("labels length does not match T");
  std::vector<std::int64_t> n(static_cast<std::size_t>(k), 0);
  for (Eigen::Index t = 0; t < x.len(); ++t) {
    const int lab = labels[static_cast<std::size_t>(t)];
    if (lab < 0 || lab >= k) throw DimensionMismatchError("label outside [0, K)");
    n[static_cast<std::size_t>(lab)] += x.trial_counts[t];
  }
  return n;
}

double discrepancy(const CountMatrix& x, const ClusterModel& model, bool* support_violation) {
  check_model_against(x, model);
  const Mat& q = model.prototypes.values();
  bool violated = false;
  double acc = 0.0;
  for (Eigen::Index t = 0; t < x.len(); ++t) {
    const int k = model.labels[static_cast<std::size_t>(t)];
    const double nt = static_cast<double>(x.trial_counts[t]);
    for (Eigen::Index i = 0; i < x.dim(); ++i) {
      const std::int64_t c = x.entries(i, t);
      if (c == 0) continue;
      double qi = q(i, k);
      if (qi < kLogGuard) {
        qi = kLogGuard;
        violated = true;
      }
      acc -= (static_cast<double>(c) / nt) * std::log(qi);
    }
  }
  if (support_violation) *support_violation = violated;
  return acc;
}

double discrepancy(const CountMatrix& x, const ClusterModel& model) {
  return discrepancy(x, model, nullptr);
}

double log_loss(const CountMatrix& x, const ClusterModel& model) {
  check_model_against(x, model);
  const Mat& q = model.prototypes.values();
  double acc = 0.0;
  for (Eigen::Index t = 0; t < x.len(); ++t) {
    const int k = model.labels[static_cast<std::size_t>(t)];
    for (Eigen::Index i = 0; i < x.dim(); ++i) {
      const std::int64_t c = x.entries(i, t);
      if (c == 0) continue;
      acc -= static_cast<double>(c) * std::log(std::max(q(i, k), kLogGuard));
    }
  }
  return acc;
}

double penalty(const ClusterModel& model, const CountMatrix& x, const CriterionParams& params) {
  params.validate();
  check_model_against(x, model);
  const auto z = z_counts(model, params.zero_threshold);
  const auto n = n_counts(x, model.labels, model.K);
  double acc = 0.0;
  for (int k = 0; k < model.K; ++k) {
    if (n[static_cast<std::size_t>(k)] <= 0) throw EmptyClusterError(k);
    acc += static_cast<double>(z[static_cast<std::size_t>(k)] - 1) /
           std::pow(static_cast<double>(n[static_cast<std::size_t>(k)]), params.s);
  }
  return params.gamma * acc;
}

double conventional_penalty(ConventionalKind kind, int k, int d, std::int64_t n_total) {
  if (k < 1) throw Error("conventional penalty needs K >= 1");
  if (d < 2) throw Error("conventional penalty needs d >= 2");
  const double base = static_cast<double>(d - 1) * static_cast<double>(k);
  if (kind == ConventionalKind::AIC) return base;
  return base * std::log(static_cast<double>(n_total));
}

double delta(const CountMatrix& x, const ClusterModel& model, const CriterionParams& params) {
  try {
    return discrepancy(x, model) + penalty(model, x, params);
  } catch (const EmptyClusterError&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::vector<FittedModel> fit_models(const CountMatrix& x, int k_min, int k_max,
                                    const NmfParams& nmf_params, const SearchParams& search,
                                    bool refine) {
  const int maxk = static_cast<int>(std::min(x.dim(), x.len()));
  if (k_min < 1 || k_min > k_max || k_max > maxk)
    throw RankOutOfRangeError("k range [" + std::to_string(k_min) + ", " +
                              std::to_string(k_max) + "] outside [1, " + std::to_string(maxk) +
                              "]");
  const int count = k_max - k_min + 1;
  std::vector<FittedModel> fits(static_cast<std::size_t>(count));
  parallel_for(count, [&](int idx) {
    const int k = k_min + idx;
    NmfParams np = nmf_params;
    np.seed = mix_seed(nmf_params.seed, static_cast<std::uint64_t>(k));
    PreliminaryEstimate prelim = preliminary_estimate(x, k, np);
    if (refine) {
      SearchParams sp = search;
      sp.seed = mix_seed(search.seed, static_cast<std::uint64_t>(k) + 7919);
      RefineResult refined = refine_labels(x, prelim.model, sp);
      fits[static_cast<std::size_t>(idx)] =
          FittedModel{k, std::move(refined.model), prelim.nmf_converged};
    } else {
      fits[static_cast<std::size_t>(idx)] =
          FittedModel{k, std::move(prelim.model), prelim.nmf_converged};
    }
  });
  return fits;
}

SelectionReport evaluate_models(const CountMatrix& x, const std::vector<FittedModel>& fits,
                                const CriterionParams& criterion) {
  criterion.validate();
  SelectionReport report;
  report.per_k.reserve(fits.size());
  for (const auto& fit : fits) {
    PerKRecord rec;
    rec.k = fit.k;
    rec.converged = fit.converged;
    rec.z_counts = z_counts(fit.model, criterion.zero_threshold);
    rec.n_counts = n_counts(x, fit.model.labels, fit.model.K);
    rec.discrepancy = discrepancy(x, fit.model, &rec.support_violation);
    try {
      rec.penalty = penalty(fit.model, x, criterion);
      rec.delta = rec.discrepancy + rec.penalty;
    } catch (const EmptyClusterError&) {
      rec.penalty = std::numeric_limits<double>::infinity();
      rec.delta = std::numeric_limits<double>::infinity();
      rec.dominated = true;
    }
    report.per_k.push_back(std::move(rec));
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& rec : report.per_k) best = std::min(best, rec.delta);
  report.chosen_k = report.per_k.front().k;
  const double cutoff = std::isinf(best)
                            ? best
                            : best * (1.0 + criterion.near_tie_rel);
  for (const auto& rec : report.per_k) {
    if (rec.delta <= cutoff || (std::isinf(best) && std::isinf(rec.delta))) {
      report.chosen_k = rec.k;
      break;
    }
  }
  return report;
}

SelectionReport sweep(const CountMatrix& x, int k_min, int k_max,
                      const CriterionParams& criterion, const NmfParams& nmf_params,
                      const SearchParams& search, bool refine) {
  return evaluate_models(x, fit_models(x, k_min, k_max, nmf_params, search, refine), criterion);
}

ClusterModel merge_last_two(const ClusterModel& truth, const VecI& trial_counts) {
  if (truth.K < 2) throw KTooSmallError("merge needs K >= 2");
  if (static_cast<std::size_t>(trial_counts.size()) != truth.labels.size())
    throw LengthMismatchError("trial_counts length does not match labels");
  const int a = truth.K - 2, b = truth.K - 1;
  double na = 0.0, nb = 0.0;
  for (std::size_t t = 0; t < truth.labels.size(); ++t) {
    if (truth.labels[t] == a) na += static_cast<double>(trial_counts[static_cast<Eigen::Index>(t)]);
    if (truth.labels[t] == b) nb += static_cast<double>(trial_counts[static_cast<Eigen::Index>(t)]);
  }
  const Mat& q = truth.prototypes.values();
  Mat merged(q.rows(), truth.K - 1);
  merged.leftCols(truth.K - 2) = q.leftCols(truth.K - 2);
  if (na + nb > 0.0)
    merged.col(a) = (na * q.col(a) + nb * q.col(b)) / (na + nb);
  else
    merged.col(a) = 0.5 * (q.col(a) + q.col(b));
  std::vector<int> labels = truth.labels;
  for (int& lab : labels)
    if (lab == b) lab = a;
  return make_cluster_model(std::move(labels), ProbabilityMatrix(std::move(merged)));
}

ClusterModel split_last(const ClusterModel& truth, const std::vector<int>& split_assignment) {
  const int last = truth.K - 1;
  std::vector<char> member(truth.labels.size(), 0);
  std::int64_t last_size = 0;
  for (std::size_t t = 0; t < truth.labels.size(); ++t)
    if (truth.labels[t] == last) ++last_size;
  if (split_assignment.empty()) throw InvalidSplitError("split subset is empty");
  for (int t : split_assignment) {
    if (t < 0 || static_cast<std::size_t>(t) >= truth.labels.size() ||
        truth.labels[static_cast<std::size_t>(t)] != last)
      throw InvalidSplitError("observation " + std::to_string(t) +
                              " is not a member of the last cluster");
    if (member[static_cast<std::size_t>(t)]) throw InvalidSplitError("duplicate observation in split");
    member[static_cast<std::size_t>(t)] = 1;
  }
  if (static_cast<std::int64_t>(split_assignment.size()) >= last_size)
    throw InvalidSplitError("split subset must be proper");
  const Mat& q = truth.prototypes.values();
  Mat extended(q.rows(), truth.K + 1);
  extended.leftCols(truth.K) = q;
  extended.col(truth.K) = q.col(last);
  std::vector<int> labels = truth.labels;
  for (int t : split_assignment) labels[static_cast<std::size_t>(t)] = truth.K;
  return make_cluster_model(std::move(labels), ProbabilityMatrix(std::move(extended)));
}

namespace {

void write_number(std::ostream& out, double v) {
  if (std::isinf(v))
    out << "inf";
  else {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    out << buf;
  }
}

}  // namespace

void write_report_csv(std::ostream& out, const SelectionReport& report, std::uint64_t seed) {
  out << "k,discrepancy,penalty,delta,chosen,converged,support_violation\n";
  for (const auto& rec : report.per_k) {
    out << rec.k << ',';
    write_number(out, rec.discrepancy);
    out << ',';
    write_number(out, rec.penalty);
    out << ',';
    write_number(out, rec.delta);
    out << ',' << (rec.k == report.chosen_k ? 1 : 0) << ',' << (rec.converged ? 1 : 0) << ','
        << (rec.support_violation ? 1 : 0) << '\n';
  }
  out << "# seed=" << seed << ", version=" << kVersion << ", chosen_k=" << report.chosen_k
      << '\n';
}

std::string report_to_csv(const SelectionReport& report, std::uint64_t seed) {
  std::ostringstream ss;
  write_report_csv(ss, report, seed);
  return ss.str();
}

}  // namespace mnclust
