#pragma once

#include <random>
#include <string>
#include <vector>

#include "mnclust/types.hpp"

namespace mnclust {

struct BlockGraphSpec {
  std::vector<Mat> block_matrices;  // one b x b rate matrix per graph
  int block_size = 20;              // m vertices per block
  double intensity = 1.0;           // rho in [0, 1]
  double scale = 100.0;             // base rate multiplier

  void validate() const;
};

struct SbmSpec {
  Mat block_probabilities;      // symmetric b x b, entries in (0, 1)
  std::vector<int> block_sizes;

  int n_vertices() const;
  void validate() const;
};

struct PlantedData {
  CountMatrix x;
  ClusterModel truth;
};

// Two prototypes proportional to (1,...,1,10 x10,0,...,0) and its mirror,
// one multinomial column drawn from each.  Throws DTooSmallError for d < 20.
PlantedData two_cluster_sparse(int d, std::int64_t n_trials, std::uint64_t seed);

// The prototype pair used by two_cluster_sparse, without sampling.
ProbabilityMatrix two_cluster_prototypes(int d);

// Independent Poisson weighted graphs, E[G_ij(t)] = scale * rho * B^(t)_uv.
std::vector<MatI> block_poisson_graphs(const BlockGraphSpec& spec, std::uint64_t seed);

// The two 5x5 rate matrices of the block-Poisson comparison experiment.
std::vector<Mat> two_pattern_rate_matrices();

// Sums edge weights over group-by-group sub-blocks.
MatI aggregate_graph(const MatI& g, const std::vector<std::vector<int>>& groups);

// Contiguous partition of {0..n-1} into c equal groups.
std::vector<std::vector<int>> contiguous_groups(int n, int c);

enum class VectorizeMode { Full, Upper };

// Column t is graph t flattened: all c^2 entries (Full) or the strict upper
// triangle, row-major (Upper).
CountMatrix vectorize_graphs(const std::vector<MatI>& graphs, VectorizeMode mode);

struct SbmData {
  CountMatrix x;
  std::vector<int> true_labels;
};

// copies_per_spec undirected loop-less Bernoulli graphs per spec, vectorized
// in Upper mode; labels follow the spec index.
SbmData sbm_graphs(const std::vector<SbmSpec>& specs, int copies_per_spec, std::uint64_t seed);

// The n-vertex pair of stochastic block models from the two-graph comparison
// setup: four equal blocks at (0.75 / 0.25) and three blocks sized
// (n/4, n/2, n/4) at (0.6 / 0.4).  n must be divisible by 4.
std::vector<SbmSpec> two_pattern_sbm_specs(int n);

// Deterministic 220 x 256 binary matrix: 20x11-pixel images of a fixed torso
// plus four limbs, each limb in one of four positions.  rank 13; admits an
// exact 16-column non-negative factorization.
CountMatrix swimmer_matrix();

// The exact 16-column factorization (W, H) with X = W * H entry-wise.
Factorization swimmer_exact_factorization();

// Indices of the always-on torso pixels.
std::vector<int> swimmer_torso_pixels();

// One PGM file per column, named swimmer_000.pgm .. swimmer_255.pgm.
void write_swimmer_pgms(const std::string& directory);

// Column t is one multinomial draw with trial_counts[t] trials from the
// prototype of cluster kappa(t).
CountMatrix planted_multinomial(const ClusterModel& model, const VecI& trial_counts,
                                std::uint64_t seed);

// One multinomial draw (sequential binomial method).
VecI multinomial_draw(std::int64_t n, const Vec& probs, std::mt19937_64& rng);

}  // namespace mnclust
