#pragma once

#include <vector>

#include "mnclust/types.hpp"

namespace mnclust {

struct PamResult {
  std::vector<int> labels;
  int chosen_k = 0;
  bool degenerate = false;  // T == 2, silhouette undefined, k forced to 2
};

// Euclidean column distances, PAM (build + swap) per k in [k_min, k_max]
// intersected with [2, T-1]; chosen_k maximizes the mean silhouette width.
PamResult pam_silhouette(const CountMatrix& x, int k_min, int k_max);

struct ElbowResult {
  std::vector<int> labels;
  int chosen_rank = 0;
};

// Profile-likelihood elbow on the singular values picks the rank; k-means
// (k-means++ init, 10 restarts) clusters the columns projected onto the top
// singular directions.
ElbowResult elbow_kmeans(const CountMatrix& x, int k_max, std::uint64_t seed);

// Exposed for tests.
int profile_likelihood_elbow(const Vec& singular_values, int k_max);
std::vector<int> kmeans(const Mat& points, int k, std::uint64_t seed, int restarts);
double mean_silhouette(const Mat& dist, const std::vector<int>& labels, int k);
std::vector<int> pam(const Mat& dist, int k);

}  // namespace mnclust
