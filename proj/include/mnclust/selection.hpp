#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mnclust/types.hpp"

namespace mnclust {

// Number of prototype entries counted as non-zero: Q(i,k) > tau * max_i Q(i,k).
std::vector<int> z_counts(const ClusterModel& model, double zero_threshold);

// N_k = sum of trial counts over the members of cluster k.
std::vector<std::int64_t> n_counts(const CountMatrix& x, const std::vector<int>& labels, int k);

// D(Q, kappa) = sum_t sum_i P~_{it} * (-log Q_{i,kappa(t)}).  Zero P~ terms
// contribute 0; a positive P~ against a prototype entry below 1e-300 goes
// through the log guard (support_violation reports whether that happened).
double discrepancy(const CountMatrix& x, const ClusterModel& model);
double discrepancy(const CountMatrix& x, const ClusterModel& model, bool* support_violation);

// -sum_t sum_i X_{it} log Q_{i,kappa(t)}: the count-weighted form used by the
// conventional criteria (multinomial coefficient constant omitted).
double log_loss(const CountMatrix& x, const ClusterModel& model);

// gamma * sum_k (Z_k - 1) / N_k^s.  Throws EmptyClusterError if some cluster
// has no members.
double penalty(const ClusterModel& model, const CountMatrix& x, const CriterionParams& params);

enum class ConventionalKind { AIC, BIC };

// (d-1)K for AIC, (d-1)K log(N) for BIC.
double conventional_penalty(ConventionalKind kind, int k, int d, std::int64_t n_total);

// discrepancy + penalty; +infinity for a model with an empty cluster.
double delta(const CountMatrix& x, const ClusterModel& model, const CriterionParams& params);

struct PerKRecord {
  int k = 0;
  double discrepancy = 0.0;
  double penalty = 0.0;
  double delta = 0.0;
  std::vector<int> z_counts;
  std::vector<std::int64_t> n_counts;
  bool converged = false;
  bool support_violation = false;
  bool dominated = false;  // empty cluster, delta forced to +inf
};

struct SelectionReport {
  std::vector<PerKRecord> per_k;
  int chosen_k = 0;
};

struct FittedModel {
  int k = 0;
  ClusterModel model;
  bool converged = false;
};

// One model per K: preliminary estimate, then (optionally) MLqE refinement.
// Per-K fits run concurrently; seeds are derived deterministically from the
// parameter seeds and K.
std::vector<FittedModel> fit_models(const CountMatrix& x, int k_min, int k_max,
                                    const NmfParams& nmf_params, const SearchParams& search,
                                    bool refine = true);

// Criterion table for pre-fitted models; chosen_k is the smallest k whose
// delta is within (1 + near_tie_rel) of the minimum.
SelectionReport evaluate_models(const CountMatrix& x, const std::vector<FittedModel>& fits,
                                const CriterionParams& criterion);

// fit_models + evaluate_models.
SelectionReport sweep(const CountMatrix& x, int k_min, int k_max,
                      const CriterionParams& criterion, const NmfParams& nmf_params,
                      const SearchParams& search, bool refine = true);

// Theorem-2 style constructions.  merge_last_two fuses the last two clusters;
// the merged prototype is the trial-count-weighted average of the two merged
// prototypes.  split_last duplicates the last prototype and moves the listed
// observations (a proper non-empty subset of the last cluster) into it.
ClusterModel merge_last_two(const ClusterModel& truth, const VecI& trial_counts);
ClusterModel split_last(const ClusterModel& truth, const std::vector<int>& split_assignment);

// CSV with columns k,discrepancy,penalty,delta,chosen,converged,support_violation
// plus a trailing "# seed=..., version=..." metadata comment.
void write_report_csv(std::ostream& out, const SelectionReport& report, std::uint64_t seed);
std::string report_to_csv(const SelectionReport& report, std::uint64_t seed);

}  // namespace mnclust
