#pragma once

#include <vector>

#include "mnclust/types.hpp"

namespace mnclust {

// Hubert-Arabie adjusted Rand index from the contingency table.
// Label values are arbitrary; requires equal lengths and T >= 2.
double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

// sum_i p_i log(p_i / q_i), 0 log 0 := 0, +infinity on support violation.
double kl_divergence(const Vec& p, const Vec& q);

// -sum_i p_i log p_i with the 0 log 0 convention.
double entropy(const Vec& p);

// phi(P) = -sum_{t,i} E[X_it] / (N_t * nbar_{kappa*(t)}^2) * log(P_it).
// Entries with x_expected == 0 contribute 0.
double weighted_discrepancy_phi(const ProbabilityMatrix& p_eval, const Mat& x_expected,
                                const VecI& trial_counts, const std::vector<int>& true_labels,
                                int k_true);

// (1/2) sum_k (zbar_k - 1) / (nbar_k * lambdabar_k).
double theorem1_limit_constant(const Vec& z_bars, const Vec& n_bars, const Vec& lambda_bars);

}  // namespace mnclust
