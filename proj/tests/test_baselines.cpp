#include <doctest.h>

#include <random>

#include "mnclust/baselines.hpp"
#include "mnclust/core.hpp"
#include "mnclust/datagen.hpp"
#include "mnclust/metrics.hpp"
#include "test_helpers.hpp"

using namespace mnclust;
using namespace mnclust::testing;

TEST_CASE("pam_silhouette separates two far groups") {
  // Two tight groups of columns far apart.
  MatI counts(2, 6);
  counts << 100, 101, 99, 1, 2, 1,
      1, 2, 1, 100, 101, 99;
  const CountMatrix x = validate_count_matrix(counts);
  const PamResult res = pam_silhouette(x, 2, 5);
  CHECK(res.chosen_k == 2);
  CHECK_FALSE(res.degenerate);
  CHECK(adjusted_rand_index(res.labels, {0, 0, 0, 1, 1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("pam_silhouette boundary T = 2") {
  const CountMatrix x = validate_count_matrix(make_counts({{3, 1}, {1, 3}}));
  const PamResult res = pam_silhouette(x, 2, 5);
  CHECK(res.chosen_k == 2);
  CHECK(res.degenerate);
  CHECK(res.labels == std::vector<int>{0, 1});
}

TEST_CASE("duplicated columns give silhouette 1 at the true k") {
  MatI counts(3, 6);
  counts << 5, 5, 5, 1, 1, 1,
      1, 1, 1, 7, 7, 7,
      2, 2, 2, 3, 3, 3;
  const CountMatrix x = validate_count_matrix(counts);
  const Mat dist = [&] {
    Mat d(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        d(i, j) = (x.entries.col(i) - x.entries.col(j)).cast<double>().norm();
    return d;
  }();
  const std::vector<int> labels = {0, 0, 0, 1, 1, 1};
  CHECK(mean_silhouette(dist, labels, 2) == doctest::Approx(1.0));
  const PamResult res = pam_silhouette(x, 2, 5);
  CHECK(res.chosen_k == 2);
}

TEST_CASE("pam objective is non-increasing with more medoids allowed") {
  std::mt19937_64 rng(3);
  const MatI counts = random_counts(4, 8, 20, rng);
  const CountMatrix x = validate_count_matrix(counts);
  Mat dist(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      dist(i, j) = (counts.col(i) - counts.col(j)).cast<double>().norm();
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 2; k <= 5; ++k) {
    const std::vector<int> labels = pam(dist, k);
    double cost = 0.0;
    // Medoid of each assigned cluster minimizes within-cluster distance sums;
    // evaluate the realized assignment cost through cluster minima.
    for (int c = 0; c < k; ++c) {
      double best = std::numeric_limits<double>::infinity();
      for (int m = 0; m < 8; ++m) {
        if (labels[static_cast<std::size_t>(m)] != c) continue;
        double acc = 0.0;
        for (int t = 0; t < 8; ++t)
          if (labels[static_cast<std::size_t>(t)] == c) acc += dist(t, m);
        best = std::min(best, acc);
      }
      if (best < std::numeric_limits<double>::infinity()) cost += best;
    }
    CHECK(cost <= prev + 1e-9);
    prev = cost;
  }
}

TEST_CASE("profile likelihood elbow") {
  SUBCASE("clear two-spike spectrum") {
    Vec sv(6);
    sv << 50.0, 41.0, 0.3, 0.2, 0.25, 0.1;
    CHECK(profile_likelihood_elbow(sv, 5) == 2);
  }
  SUBCASE("rank-1 spectrum") {
    Vec sv(5);
    sv << 30.0, 1e-9, 1e-10, 0.0, 0.0;
    CHECK(profile_likelihood_elbow(sv, 4) == 1);
  }
}

TEST_CASE("elbow_kmeans on an exact low-rank matrix plus tiny noise") {
  std::mt19937_64 rng(7);
  // Disjoint supports keep the two leading singular values comparable.
  Mat protos = Mat::Zero(10, 2);
  for (int i = 0; i < 5; ++i) protos(i, 0) = 40.0 + static_cast<double>(rng() % 20);
  for (int i = 5; i < 10; ++i) protos(i, 1) = 40.0 + static_cast<double>(rng() % 20);
  MatI counts(10, 8);
  for (int t = 0; t < 8; ++t) {
    const Vec base = protos.col(t < 4 ? 0 : 1);
    for (int i = 0; i < 10; ++i)
      counts(i, t) = std::max<std::int64_t>(0, static_cast<std::int64_t>(std::llround(
                                                   base[i] + static_cast<double>(rng() % 3))));
    if (counts.col(t).sum() == 0) counts(0, t) = 1;
  }
  const CountMatrix x = validate_count_matrix(counts);
  const ElbowResult res = elbow_kmeans(x, 5, 13);
  CHECK(res.chosen_rank == 2);
  CHECK(adjusted_rand_index(res.labels, {0, 0, 0, 0, 1, 1, 1, 1}) == doctest::Approx(1.0));
}

TEST_CASE("elbow_kmeans with identical columns picks rank 1") {
  MatI counts(4, 5);
  for (int t = 0; t < 5; ++t) {
    counts(0, t) = 3;
    counts(1, t) = 1;
    counts(2, t) = 4;
    counts(3, t) = 1;
  }
  const CountMatrix x = validate_count_matrix(counts);
  const ElbowResult res = elbow_kmeans(x, 4, 3);
  CHECK(res.chosen_rank == 1);
}

TEST_CASE("baselines are deterministic given the seed") {
  std::mt19937_64 rng(9);
  const CountMatrix x = validate_count_matrix(random_counts(6, 9, 15, rng));
  const ElbowResult a = elbow_kmeans(x, 5, 77);
  const ElbowResult b = elbow_kmeans(x, 5, 77);
  CHECK(a.labels == b.labels);
  CHECK(a.chosen_rank == b.chosen_rank);
  const PamResult pa = pam_silhouette(x, 2, 5);
  const PamResult pb = pam_silhouette(x, 2, 5);
  CHECK(pa.labels == pb.labels);
}

TEST_CASE("planted block-poisson recovery at full intensity") {
  // Regenerate the c = 5 aggregated setting at rho = 1 and require a high ARI.
  BlockGraphSpec spec{two_pattern_rate_matrices(), 20, 1.0, 100.0};
  double acc = 0.0;
  const int reps = 10;
  for (int rep = 0; rep < reps; ++rep) {
    const auto graphs = block_poisson_graphs(spec, 400 + static_cast<std::uint64_t>(rep));
    const auto groups = contiguous_groups(100, 5);
    std::vector<MatI> agg;
    for (const MatI& g : graphs) agg.push_back(aggregate_graph(g, groups));
    const CountMatrix x = vectorize_graphs(agg, VectorizeMode::Full);
    const ElbowResult res = elbow_kmeans(x, 2, 500 + static_cast<std::uint64_t>(rep));
    acc += adjusted_rand_index(res.labels, {0, 1});
  }
  CHECK(acc / reps >= 0.9);
}
