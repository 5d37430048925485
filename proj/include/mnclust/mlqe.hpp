#pragma once

#include <vector>

#include "mnclust/types.hpp"

namespace mnclust {

// M[i,k] = sum of X[i,t] over observations t with labels[t] == k.
// Columns of empty clusters are all-zero.
MatI cluster_counts(const CountMatrix& x, const std::vector<int>& labels, int k);

// Q[i,k] proportional to M[i,k]^(1/q); q = 1 gives plain MLE proportions.
// Exponentiation happens in log space.  Throws EmptyClusterError for an
// all-zero column.
ProbabilityMatrix closed_form_prototypes(const MatI& m, double q);

// The profiled objective L*(kappa; q): for q = 1 the log form
// sum_k sum_i M log(M / colsum); for q < 1 sum_k (sum_i M^(1/q))^q.
// All-zero columns and zero entries contribute 0.
double profile_objective(const MatI& m, double q);

struct RefineResult {
  ClusterModel model;
  double objective = 0.0;  // L* of the returned labels
  int sweeps = 0;
  bool reached_fixed_point = false;
};

// Greedy coordinate ascent over labels starting from init: visits
// observations in a seeded random order each sweep, moving a label only on
// strict improvement of L*; moves that would empty a cluster are rejected.
// Stops after a sweep with no change or after max_sweeps.  Prototypes of the
// returned model are the closed-form update at the final labels (uniform for
// clusters that stayed empty).
RefineResult refine_labels(const CountMatrix& x, const ClusterModel& init,
                           const SearchParams& params);

}  // namespace mnclust
