#pragma once

#include <vector>

#include "mnclust/types.hpp"

namespace mnclust {

struct NmfOutcome {
  Factorization factors;
  double objective = 0.0;  // ||p - W H||_F of the returned pair
  bool converged = false;
  std::vector<double> objective_history;  // per-iteration, best run
};

// Frobenius NMF by multiplicative updates.  Runs restarts+1 times with seeds
// seed, seed+1, ... and returns the run with the lowest objective.  Basis
// columns are renormalized to sum to 1, the scale absorbed into H.
// Non-convergence is reported through the flag, never an error.
NmfOutcome nmf(const ProbabilityMatrix& p, int k, const NmfParams& params);

// labels[t] = argmax_k H(k, t); ties resolved uniformly with the supplied
// seed.  Prototypes are the renormalized basis columns.
ClusterModel map_assign(const Factorization& f, std::uint64_t seed);

struct PreliminaryEstimate {
  ClusterModel model;
  bool nmf_converged = false;
  double nmf_objective = 0.0;
};

// Reduced-rank projection -> clip -> normalize -> NMF -> MAP.
PreliminaryEstimate preliminary_estimate(const CountMatrix& x, int k, const NmfParams& params);

}  // namespace mnclust
