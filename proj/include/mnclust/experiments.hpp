#pragma once

#include <vector>

#include "mnclust/selection.hpp"
#include "mnclust/types.hpp"

namespace mnclust {

// Smallest-K argmin of the conventional criterion over pre-fitted models.
int conventional_choice(const CountMatrix& x, const std::vector<FittedModel>& fits,
                        ConventionalKind kind);

struct Table2Row {
  int d = 0;
  int delta_successes = 0;
  int aic_successes = 0;
};

// Monte Carlo comparison on the planted two-cluster family: counts of
// replicates selecting K = 2 under the zero-aware criterion at (s, gamma) =
// (1, 1) and under conventional AIC.  Replicate r uses seed base_seed + r.
std::vector<Table2Row> mc_table2(const std::vector<int>& d_list, int reps,
                                 std::int64_t n_trials, std::uint64_t base_seed,
                                 int threads = 0);

struct SbmAriRow {
  int n = 0;
  double ari_delta = 0.0;
  double ari_pam = 0.0;
  double ari_elbow = 0.0;
};

// Six-graph SBM clustering: per vertex count, mean adjusted Rand index of the
// criterion pipeline and the two baselines over seeded replicates.
std::vector<SbmAriRow> sbm_experiment(const std::vector<int>& n_list, int reps,
                                      std::uint64_t base_seed, int threads = 0);

struct PoissonAriRow {
  double rho = 0.0;
  int c = 0;
  double ari_delta = 0.0;
  double ari_pam = 0.0;
  double ari_elbow = 0.0;
};

// Block-Poisson pair clustering after vertex aggregation to c groups.
std::vector<PoissonAriRow> poisson_block_experiment(const std::vector<double>& rho_list,
                                                    const std::vector<int>& c_list, int reps,
                                                    std::uint64_t base_seed, int threads = 0);

struct Theorem1Row {
  double ell = 0.0;
  double estimate = 0.0;  // ell * (mean phi(P~) - phi(P*))
  double limit = 0.0;     // the closed-form constant
};

// Monte Carlo check of the weighted-discrepancy limit on a fixed K* = 2,
// d = 6 instance with one structural zero per prototype.
std::vector<Theorem1Row> theorem1_check(const std::vector<double>& ells, int reps,
                                        std::uint64_t base_seed, int threads = 0);

struct Theorem3Row {
  int d = 0;
  int t = 0;
  double cap = 0.0;
  double mse = 0.0;
};

// Truncated rank-K* projection of a block-Poisson mean matrix across an
// increasing (d, T) grid; cap grows like 2 * (T^3 / d)^(1/8).
std::vector<Theorem3Row> theorem3_check(const std::vector<int>& sizes, int reps,
                                        std::uint64_t base_seed, int threads = 0);

}  // namespace mnclust
