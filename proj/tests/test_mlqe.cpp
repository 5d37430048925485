#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mnclust/factorize.hpp"
#include "mnclust/mlqe.hpp"
#include "test_helpers.hpp"
#include "mnclust/core.hpp"
#include "mnclust/datagen.hpp"

using namespace mnclust;
using namespace mnclust::testing;

namespace {

// Independent oracle: L* over every label vector in {0..k-1}^T, restricted to
// surjective ones when requested.
double brute_force_best(const CountMatrix& x, int k, double q, bool surjective_only) {
  const auto t = static_cast<std::size_t>(x.len());
  std::vector<int> labels(t, 0);
  double best = -std::numeric_limits<double>::infinity();
  const auto total = static_cast<std::uint64_t>(std::pow(k, static_cast<double>(t)));
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < t; ++i) {
      labels[i] = static_cast<int>(c % static_cast<std::uint64_t>(k));
      seen[static_cast<std::size_t>(labels[i])] = 1;
      c /= static_cast<std::uint64_t>(k);
    }
    if (surjective_only && std::count(seen.begin(), seen.end(), 1) != k) continue;
    best = std::max(best, profile_objective(cluster_counts(x, labels, k), q));
  }
  return best;
}

}  // namespace

TEST_CASE("cluster_counts") {
  const CountMatrix x = validate_count_matrix(make_counts({{1, 2}, {3, 4}}));
  SUBCASE("both in one cluster") {
    const MatI m = cluster_counts(x, {0, 0}, 1);
    CHECK(m(0, 0) == 3);
    CHECK(m(1, 0) == 7);
  }
  SUBCASE("identity labelling returns the data") {
    const MatI m = cluster_counts(x, {0, 1}, 2);
    CHECK(m == x.entries);
  }
  SUBCASE("empty cluster column is zero") {
    const MatI m = cluster_counts(x, {0, 0}, 2);
    CHECK(m.col(1).isZero());
  }
}

TEST_CASE("closed_form_prototypes") {
  SUBCASE("q = 1 gives plain proportions") {
    MatI m = make_counts({{2}, {2}});
    const auto q = closed_form_prototypes(m, 1.0);
    CHECK(q.values()(0, 0) == doctest::Approx(0.5));
  }
  SUBCASE("q = 0.5 squares the counts") {
    MatI m = make_counts({{1}, {4}});
    const auto q = closed_form_prototypes(m, 0.5);
    CHECK(q.values()(0, 0) == doctest::Approx(1.0 / 17.0));
    CHECK(q.values()(1, 0) == doctest::Approx(16.0 / 17.0));
  }
  SUBCASE("zero weight stays zero") {
    MatI m = make_counts({{0}, {5}});
    for (double q : {0.3, 0.7, 1.0}) {
      const auto p = closed_form_prototypes(m, q);
      CHECK(p.values()(0, 0) == 0.0);
      CHECK(p.values()(1, 0) == doctest::Approx(1.0));
    }
  }
  SUBCASE("empty column is an error") {
    MatI m = make_counts({{0, 1}, {0, 1}});
    CHECK_THROWS_AS(closed_form_prototypes(m, 1.0), EmptyClusterError);
  }
}

TEST_CASE("profile_objective hand values") {
  SUBCASE("q = 1") {
    MatI m = make_counts({{2}, {2}});
    CHECK(profile_objective(m, 1.0) == doctest::Approx(4.0 * std::log(0.5)));
  }
  SUBCASE("q = 0.5") {
    MatI m = make_counts({{1}, {4}});
    const double expected = 1.0 * std::sqrt(1.0 / 17.0) + 4.0 * std::sqrt(16.0 / 17.0);
    CHECK(profile_objective(m, 0.5) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(profile_objective(m, 0.5) == doctest::Approx(4.12310).epsilon(1e-5));
  }
  SUBCASE("all-zero matrix contributes nothing") {
    MatI m = MatI::Zero(3, 2);
    CHECK(profile_objective(m, 1.0) == 0.0);
    CHECK(profile_objective(m, 0.5) == 0.0);
  }
}

TEST_CASE("q -> 1 consistency through the Lq-log normalization") {
  // (L*(q) - N) / (1 - q) approaches the q = 1 logarithmic form.
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    const MatI m = random_counts(4, 3, 30, rng);
    const double n = static_cast<double>(m.sum());
    const double q = 1.0 - 1e-6;
    const double bridged = (profile_objective(m, q) - n) / (1.0 - q);
    const double atone = profile_objective(m, 1.0);
    CHECK(bridged == doctest::Approx(atone).epsilon(1e-3));
  }
}

TEST_CASE("closed form beats random simplex candidates on the Lq objective") {
  std::mt19937_64 rng(43);
  for (int rep = 0; rep < 10; ++rep) {
    MatI m = random_counts(3, 1, 40, rng);
    for (double q : {0.5, 0.9, 1.0}) {
      const Vec proto = closed_form_prototypes(m, q).values().col(0);
      auto objective = [&](const Vec& cand) {
        double acc = 0.0;
        for (int i = 0; i < 3; ++i) {
          const double c = static_cast<double>(m(i, 0));
          if (c == 0.0) continue;
          if (q == 1.0)
            acc += cand[i] > 0.0 ? c * std::log(cand[i])
                                 : -std::numeric_limits<double>::infinity();
          else
            acc += c * (std::pow(cand[i], 1.0 - q) - 1.0) / (1.0 - q);
        }
        return acc;
      };
      const double best = objective(proto);
      for (int cand = 0; cand < 2000; ++cand)
        CHECK(objective(random_simplex(3, rng)) <= best + 1e-9 * std::abs(best));
    }
  }
}

TEST_CASE("refine_labels fixes a corrupted planted label within one pass") {
  Mat protos = Mat::Zero(6, 2);
  protos.col(0) << 0.5, 0.3, 0.2, 0.0, 0.0, 0.0;
  protos.col(1) << 0.0, 0.0, 0.0, 0.2, 0.3, 0.5;
  ClusterModel truth = make_cluster_model({0, 0, 0, 1, 1, 1}, ProbabilityMatrix(protos));
  VecI trials = VecI::Constant(6, 500);
  const CountMatrix x = planted_multinomial(truth, trials, 99);

  ClusterModel corrupted = truth;
  corrupted.labels[1] = 1;
  SearchParams params;
  params.seed = 5;
  const RefineResult res = refine_labels(x, corrupted, params);
  CHECK(res.model.labels == truth.labels);
  CHECK(res.reached_fixed_point);

  // Verify against exhaustive evaluation over the two candidate labels for t=1.
  std::vector<int> alt = truth.labels;
  alt[1] = 1;
  CHECK(profile_objective(cluster_counts(x, truth.labels, 2), 1.0) >
        profile_objective(cluster_counts(x, alt, 2), 1.0));
}

TEST_CASE("refine_labels is a fixed point at a local optimum") {
  const CountMatrix x = validate_count_matrix(make_counts({{9, 8, 0, 1}, {1, 2, 9, 9}}));
  ClusterModel init = make_cluster_model(
      {0, 0, 1, 1}, closed_form_prototypes(cluster_counts(x, {0, 0, 1, 1}, 2), 1.0));
  SearchParams params;
  const RefineResult res = refine_labels(x, init, params);
  CHECK(res.model.labels == init.labels);
}

TEST_CASE("refine_labels reaches the brute-force optimum on small instances") {
  std::mt19937_64 rng(47);
  int solved = 0;
  const int instances = 12;
  for (int rep = 0; rep < instances; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 3);
    const int t = 5 + static_cast<int>(rng() % 3);
    const CountMatrix x = validate_count_matrix(random_counts(d, t, 15, rng));
    const double q = rep % 2 == 0 ? 1.0 : 0.5;
    NmfParams np;
    np.seed = rng();
    const PreliminaryEstimate prelim = preliminary_estimate(x, 2, np);
    SearchParams sp;
    sp.q = q;
    sp.seed = rng();
    const RefineResult res = refine_labels(x, prelim.model, sp);
    const double best = brute_force_best(x, 2, q, true);
    CHECK(res.objective <= best + 1e-9 * std::abs(best));
    if (res.objective >= best - 1e-9 * std::abs(best)) ++solved;
    // Monotone: refinement never falls below its starting objective.
    const double init_obj = profile_objective(cluster_counts(x, prelim.model.labels, 2), q);
    CHECK(res.objective >= init_obj - 1e-9 * std::abs(init_obj));
  }
  CHECK(solved >= instances - 2);  // greedy may stall occasionally
}

TEST_CASE("relabeling invariance of the refined objective") {
  std::mt19937_64 rng(53);
  const CountMatrix x = validate_count_matrix(random_counts(4, 6, 20, rng));
  NmfParams np;
  np.seed = 2;
  const PreliminaryEstimate prelim = preliminary_estimate(x, 2, np);
  ClusterModel swapped = prelim.model;
  for (int& lab : swapped.labels) lab = 1 - lab;
  Mat protos = prelim.model.prototypes.values().rowwise().reverse();
  swapped = make_cluster_model(swapped.labels, ProbabilityMatrix(protos));
  SearchParams sp;
  const double a = refine_labels(x, prelim.model, sp).objective;
  const double b = refine_labels(x, swapped, sp).objective;
  CHECK(a == doctest::Approx(b).epsilon(1e-12));
}
