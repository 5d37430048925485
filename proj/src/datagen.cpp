#include "mnclust/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "mnclust/core.hpp"

namespace mnclust {

void BlockGraphSpec::validate() const {
  if (block_matrices.empty()) throw Error("block graph spec needs at least one rate matrix");
  for (const Mat& b : block_matrices) {
    if (b.rows() != b.cols() || b.rows() < 1) throw Error("rate matrices must be square");
    if (b.rows() != block_matrices.front().rows())
      throw Error("rate matrices must share a block count");
    if ((b.array() < 0.0).any()) throw Error("rates must be non-negative");
  }
  if (block_size < 1) throw Error("block size must be positive");
  if (intensity < 0.0 || intensity > 1.0) throw Error("intensity must lie in [0, 1]");
  if (scale <= 0.0) throw Error("scale must be positive");
}

int SbmSpec::n_vertices() const {
  int n = 0;
  for (int s : block_sizes) n += s;
  return n;
}

void SbmSpec::validate() const {
  if (block_probabilities.rows() != block_probabilities.cols())
    throw Error("block probability matrix must be square");
  if (static_cast<Eigen::Index>(block_sizes.size()) != block_probabilities.rows())
    throw Error("block sizes do not match the probability matrix");
  if (!block_probabilities.isApprox(block_probabilities.transpose(), 1e-12))
    throw Error("block probability matrix must be symmetric");
  for (Eigen::Index i = 0; i < block_probabilities.rows(); ++i)
    for (Eigen::Index j = 0; j < block_probabilities.cols(); ++j)
      if (block_probabilities(i, j) <= 0.0 || block_probabilities(i, j) >= 1.0)
        throw Error("block probabilities must lie in (0, 1)");
  for (int s : block_sizes)
    if (s < 1) throw Error("block sizes must be positive");
}

VecI multinomial_draw(std::int64_t n, const Vec& probs, std::mt19937_64& rng) {
  VecI out = VecI::Zero(probs.size());
  double remaining_p = probs.sum();
  std::int64_t remaining_n = n;
  for (Eigen::Index i = 0; i < probs.size() && remaining_n > 0; ++i) {
    if (probs[i] <= 0.0) continue;
    if (i == probs.size() - 1 || probs[i] >= remaining_p) {
      out[i] = remaining_n;
      remaining_n = 0;
      break;
    }
    const double p = std::clamp(probs[i] / remaining_p, 0.0, 1.0);
    std::binomial_distribution<std::int64_t> bin(remaining_n, p);
    const std::int64_t draw = bin(rng);
    out[i] = draw;
    remaining_n -= draw;
    remaining_p -= probs[i];
  }
  // Any residue from float cancellation lands in the last positive cell.
  if (remaining_n > 0) {
    for (Eigen::Index i = probs.size() - 1; i >= 0; --i)
      if (probs[i] > 0.0) {
        out[i] += remaining_n;
        break;
      }
  }
  return out;
}

ProbabilityMatrix two_cluster_prototypes(int d) {
  if (d < 20) throw DTooSmallError("two_cluster_sparse needs d >= 20");
  const int tens = 10;
  const int head = (d - tens + 1) / 2;  // leading run, shared by both vectors
  // Vector 1: ones, tens, zeros.  Vector 2: zeros, tens, ones.  Equal leading
  // runs keep the ten-valued bands aligned, so the supports overlap exactly
  // there; the one/zero run lengths differ by at most 1.
  Vec raw1 = Vec::Zero(d), raw2 = Vec::Zero(d);
  for (int i = 0; i < head; ++i) raw1[i] = 1.0;
  for (int i = head; i < head + tens; ++i) {
    raw1[i] = 10.0;
    raw2[i] = 10.0;
  }
  for (int i = head + tens; i < d; ++i) raw2[i] = 1.0;
  Mat protos(d, 2);
  protos.col(0) = raw1 / raw1.sum();
  protos.col(1) = raw2 / raw2.sum();
  return ProbabilityMatrix(std::move(protos));
}

PlantedData two_cluster_sparse(int d, std::int64_t n_trials, std::uint64_t seed) {
  ProbabilityMatrix protos = two_cluster_prototypes(d);
  ClusterModel truth = make_cluster_model({0, 1}, std::move(protos));
  VecI trials(2);
  trials << n_trials, n_trials;
  CountMatrix x = planted_multinomial(truth, trials, seed);
  return PlantedData{std::move(x), std::move(truth)};
}

std::vector<MatI> block_poisson_graphs(const BlockGraphSpec& spec, std::uint64_t seed) {
  spec.validate();
  std::mt19937_64 rng(seed);
  const int b = static_cast<int>(spec.block_matrices.front().rows());
  const int n = b * spec.block_size;
  std::vector<MatI> graphs;
  graphs.reserve(spec.block_matrices.size());
  for (const Mat& rates : spec.block_matrices) {
    MatI g(n, n);
    for (int i = 0; i < n; ++i) {
      const int u = i / spec.block_size;
      for (int j = 0; j < n; ++j) {
        const int v = j / spec.block_size;
        const double mean = spec.scale * spec.intensity * rates(u, v);
        if (mean <= 0.0) {
          g(i, j) = 0;
          continue;
        }
        std::poisson_distribution<std::int64_t> pois(mean);
        g(i, j) = pois(rng);
      }
    }
    graphs.push_back(std::move(g));
  }
  return graphs;
}

std::vector<Mat> two_pattern_rate_matrices() {
  Mat b1(5, 5), b2(5, 5);
  b1 << 0.1, 0.045, 0.015, 0.19, 0.001,
      0.045, 0.05, 0.035, 0.14, 0.03,
      0.015, 0.035, 0.08, 0.105, 0.04,
      0.19, 0.14, 0.105, 0.29, 0.13,
      0.001, 0.03, 0.04, 0.13, 0.09;
  b2 << 0.19, 0.14, 0.29, 0.105, 0.13,
      0.001, 0.03, 0.13, 0.04, 0.09,
      0.015, 0.035, 0.105, 0.08, 0.04,
      0.045, 0.05, 0.14, 0.035, 0.03,
      0.1, 0.045, 0.19, 0.015, 0.001;
  return {b1, b2};
}

MatI aggregate_graph(const MatI& g, const std::vector<std::vector<int>>& groups) {
  if (g.rows() != g.cols()) throw InvalidPartitionError("graph matrix must be square");
  const int n = static_cast<int>(g.rows());
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  for (std::size_t u = 0; u < groups.size(); ++u) {
    if (groups[u].empty()) throw InvalidPartitionError("empty group");
    for (int v : groups[u]) {
      if (v < 0 || v >= n) throw InvalidPartitionError("vertex outside range");
      if (owner[static_cast<std::size_t>(v)] != -1)
        throw InvalidPartitionError("vertex assigned twice");
      owner[static_cast<std::size_t>(v)] = static_cast<int>(u);
    }
  }
  for (int v = 0; v < n; ++v)
    if (owner[static_cast<std::size_t>(v)] == -1)
      throw InvalidPartitionError("vertex " + std::to_string(v) + " unassigned");
  MatI out = MatI::Zero(static_cast<Eigen::Index>(groups.size()),
                        static_cast<Eigen::Index>(groups.size()));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out(owner[static_cast<std::size_t>(i)], owner[static_cast<std::size_t>(j)]) += g(i, j);
  return out;
}

std::vector<std::vector<int>> contiguous_groups(int n, int c) {
  if (c < 1 || n % c != 0) throw InvalidPartitionError("group count must divide n");
  const int per = n / c;
  std::vector<std::vector<int>> groups(static_cast<std::size_t>(c));
  for (int v = 0; v < n; ++v) groups[static_cast<std::size_t>(v / per)].push_back(v);
  return groups;
}

CountMatrix vectorize_graphs(const std::vector<MatI>& graphs, VectorizeMode mode) {
  if (graphs.empty()) throw ShapeMismatchError("no graphs to vectorize");
  const Eigen::Index c = graphs.front().rows();
  for (const MatI& g : graphs)
    if (g.rows() != c || g.cols() != c) throw ShapeMismatchError("graph shapes differ");
  const Eigen::Index rows = mode == VectorizeMode::Full ? c * c : c * (c - 1) / 2;
  MatI m(rows, static_cast<Eigen::Index>(graphs.size()));
  for (std::size_t t = 0; t < graphs.size(); ++t) {
    Eigen::Index r = 0;
    if (mode == VectorizeMode::Full) {
      for (Eigen::Index i = 0; i < c; ++i)
        for (Eigen::Index j = 0; j < c; ++j) m(r++, static_cast<Eigen::Index>(t)) = graphs[t](i, j);
    } else {
      for (Eigen::Index i = 0; i < c; ++i)
        for (Eigen::Index j = i + 1; j < c; ++j) m(r++, static_cast<Eigen::Index>(t)) = graphs[t](i, j);
    }
  }
  return validate_count_matrix(m);
}

SbmData sbm_graphs(const std::vector<SbmSpec>& specs, int copies_per_spec, std::uint64_t seed) {
  if (specs.empty()) throw Error("need at least one SBM spec");
  if (copies_per_spec < 1) throw Error("copies_per_spec must be positive");
  const int n = specs.front().n_vertices();
  for (const SbmSpec& s : specs) {
    s.validate();
    if (s.n_vertices() != n) throw ShapeMismatchError("SBM specs must share a vertex count");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<MatI> graphs;
  std::vector<int> labels;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    std::vector<int> block_of(static_cast<std::size_t>(n));
    int v0 = 0, blk = 0;
    for (int size : specs[s].block_sizes) {
      for (int v = v0; v < v0 + size; ++v) block_of[static_cast<std::size_t>(v)] = blk;
      v0 += size;
      ++blk;
    }
    for (int copy = 0; copy < copies_per_spec; ++copy) {
      MatI g = MatI::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          const double p = specs[s].block_probabilities(block_of[static_cast<std::size_t>(i)],
                                                        block_of[static_cast<std::size_t>(j)]);
          const std::int64_t edge = unif(rng) < p ? 1 : 0;
          g(i, j) = edge;
          g(j, i) = edge;
        }
      graphs.push_back(std::move(g));
      labels.push_back(static_cast<int>(s));
    }
  }
  return SbmData{vectorize_graphs(graphs, VectorizeMode::Upper), std::move(labels)};
}

std::vector<SbmSpec> two_pattern_sbm_specs(int n) {
  if (n % 4 != 0 || n < 8) throw Error("vertex count must be a positive multiple of 4");
  Mat m1(4, 4), m2(3, 3);
  m1.setConstant(0.25);
  m1.diagonal().setConstant(0.75);
  m2.setConstant(0.4);
  m2.diagonal().setConstant(0.6);
  SbmSpec s1{m1, {n / 4, n / 4, n / 4, n / 4}};
  SbmSpec s2{m2, {n / 4, n / 2, n / 4}};
  return {s1, s2};
}

namespace swimmer {

// 20 x 11 pixel grid.  The torso is a full-height 4-wide vertical bar in the
// center columns.  Each limb lives in its own side column band and slides
// through four row positions (bands {0-4, 5-9, 10-14, 15-19}).  Limb sizes
// are graded (10, 8, 6, 4 pixels) so the inner patterns stay well separated.
constexpr int kRows = 20;
constexpr int kCols = 11;
constexpr int kPixels = kRows * kCols;
constexpr int kImages = 256;
constexpr int kTorsoColFirst = 4, kTorsoColLast = 7;
constexpr int kBand = 5;  // rows per position band

struct LimbShape {
  int col_first, col_last;  // inclusive
  int height;               // rows lit within the band
};
constexpr LimbShape kLimbs[4] = {
    {0, 2, 5},   // 15 px
    {8, 9, 5},   // 10 px
    {3, 3, 1},   // 1 px
    {10, 10, 1}, // 1 px
};

int pixel(int r, int c) { return r * kCols + c; }

std::vector<int> limb(int which, int position) {
  const LimbShape& shape = kLimbs[which];
  std::vector<int> px;
  for (int r = kBand * position; r < kBand * position + shape.height; ++r)
    for (int c = shape.col_first; c <= shape.col_last; ++c) px.push_back(pixel(r, c));
  return px;
}

bool is_limb_pixel(int r, int c) {
  for (int which = 0; which < 4; ++which)
    for (int position = 0; position < 4; ++position) {
      const LimbShape& shape = kLimbs[which];
      if (c >= shape.col_first && c <= shape.col_last && r >= kBand * position &&
          r < kBand * position + shape.height)
        return true;
    }
  return false;
}

// The bar plus the filler rows of the thin side columns; lit in every image.
std::vector<int> torso() {
  std::vector<int> px;
  for (int r = 0; r < kRows; ++r)
    for (int c = kTorsoColFirst; c <= kTorsoColLast; ++c) px.push_back(pixel(r, c));
  for (int r = 0; r < kRows; ++r)
    for (int c : {kLimbs[2].col_first, kLimbs[3].col_first})
      if (!is_limb_pixel(r, c)) px.push_back(pixel(r, c));
  return px;
}

}  // namespace swimmer

CountMatrix swimmer_matrix() {
  MatI m = MatI::Zero(swimmer::kPixels, swimmer::kImages);
  const std::vector<int> torso = swimmer::torso();
  for (int t = 0; t < swimmer::kImages; ++t) {
    for (int px : torso) m(px, t) = 1;
    int code = t;
    for (int limb = 0; limb < 4; ++limb) {
      const int position = code % 4;
      code /= 4;
      for (int px : swimmer::limb(limb, position)) m(px, t) = 1;
    }
  }
  return validate_count_matrix(m);
}

Factorization swimmer_exact_factorization() {
  const std::vector<int> torso = swimmer::torso();
  Mat w = Mat::Zero(swimmer::kPixels, 16);
  Mat h = Mat::Zero(16, swimmer::kImages);
  for (int limb = 0; limb < 4; ++limb)
    for (int position = 0; position < 4; ++position) {
      const int k = 4 * limb + position;
      for (int px : torso) w(px, k) = 0.25;
      for (int px : swimmer::limb(limb, position)) w(px, k) = 1.0;
    }
  for (int t = 0; t < swimmer::kImages; ++t) {
    int code = t;
    for (int limb = 0; limb < 4; ++limb) {
      h(4 * limb + code % 4, t) = 1.0;
      code /= 4;
    }
  }
  return Factorization{std::move(w), std::move(h)};
}

std::vector<int> swimmer_torso_pixels() { return swimmer::torso(); }

void write_swimmer_pgms(const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  const CountMatrix x = swimmer_matrix();
  for (int t = 0; t < swimmer::kImages; ++t) {
    char name[32];
    std::snprintf(name, sizeof name, "swimmer_%03d.pgm", t);
    std::ofstream out(fs::path(directory) / name, std::ios::binary);
    out << "P2\n" << swimmer::kCols << ' ' << swimmer::kRows << "\n255\n";
    for (int r = 0; r < swimmer::kRows; ++r) {
      for (int c = 0; c < swimmer::kCols; ++c) {
        if (c) out << ' ';
        out << (x.entries(swimmer::pixel(r, c), t) != 0 ? 255 : 0);
      }
      out << '\n';
    }
  }
}

CountMatrix planted_multinomial(const ClusterModel& model, const VecI& trial_counts,
                                std::uint64_t seed) {
  if (static_cast<std::size_t>(trial_counts.size()) != model.labels.size())
    throw LengthMismatchError("trial_counts length does not match labels");
  for (Eigen::Index t = 0; t < trial_counts.size(); ++t)
    if (trial_counts[t] < 1) throw Error("trial counts must be positive");
  std::mt19937_64 rng(seed);
  MatI m(model.prototypes.rows(), trial_counts.size());
  for (Eigen::Index t = 0; t < trial_counts.size(); ++t) {
    const Vec p = model.prototypes.col(model.labels[static_cast<std::size_t>(t)]);
    m.col(t) = multinomial_draw(trial_counts[t], p, rng);
  }
  return validate_count_matrix(m);
}

}  // namespace mnclust
