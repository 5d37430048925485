// Acceptance suite: runs the project-level checks end to end and prints one
// PASS/FAIL line per criterion.  Exit code 0 iff every selected criterion
// passes.  --criterion N runs a single one.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <Eigen/SVD>

#include "mnclust/baselines.hpp"
#include "mnclust/core.hpp"
#include "mnclust/datagen.hpp"
#include "mnclust/experiments.hpp"
#include "mnclust/factorize.hpp"
#include "mnclust/metrics.hpp"
#include "mnclust/mlqe.hpp"
#include "mnclust/selection.hpp"
#include "mnclust/lowrank.hpp"
#include "mnclust/threading.hpp"

using namespace mnclust;

namespace {

struct CheckContext {
  std::ostringstream detail;
  bool ok = true;

  void require(bool cond, const std::string& msg) {
    if (!cond) {
      ok = false;
      if (!detail.str().empty()) detail << "; ";
      detail << msg;
    }
  }
  void note(const std::string& msg) {
    if (!detail.str().empty()) detail << "; ";
    detail << msg;
  }
};

Vec random_simplex(int d, std::mt19937_64& rng) {
  std::exponential_distribution<double> expo(1.0);
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = expo(rng);
  return v / v.sum();
}

MatI random_counts(int d, int t, std::int64_t maxval, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> unif(0, maxval);
  MatI m(d, t);
  for (int j = 0; j < t; ++j) {
    std::int64_t sum = 0;
    for (int i = 0; i < d; ++i) {
      m(i, j) = unif(rng);
      sum += m(i, j);
    }
    if (sum == 0) m(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(d)), j) = 1;
  }
  return m;
}

// 1. Two-cluster Monte Carlo selection counts across dimensions.
void criterion_two_cluster_counts(CheckContext& ctx) {
  const std::vector<int> dims = {25, 50, 100};
  const std::vector<int> floors = {50, 95, 95};
  const auto rows = mc_table2(dims, 100, 200, 20240801);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::ostringstream cell;
    cell << "d=" << rows[i].d << " delta=" << rows[i].delta_successes
         << " aic=" << rows[i].aic_successes;
    ctx.note(cell.str());
    ctx.require(rows[i].delta_successes >= floors[i],
                "delta successes below floor at d=" + std::to_string(rows[i].d));
    ctx.require(rows[i].delta_successes > rows[i].aic_successes,
                "delta does not beat AIC at d=" + std::to_string(rows[i].d));
  }
}

// 2. Swimmer inner dimension.
void criterion_swimmer(CheckContext& ctx) {
  const CountMatrix x = swimmer_matrix();
  NmfParams np;
  np.seed = 11;
  SearchParams sp;
  sp.seed = 12;
  const SelectionReport report = sweep(x, 1, 20, CriterionParams{}, np, sp, true);
  ctx.note("chosen_k=" + std::to_string(report.chosen_k));
  double best = std::numeric_limits<double>::infinity();
  int argmin = 0;
  for (const auto& rec : report.per_k)
    if (rec.delta < best) {
      best = rec.delta;
      argmin = rec.k;
    }
  ctx.note("argmin_delta=" + std::to_string(argmin));
  ctx.require(report.chosen_k == 16, "selected K differs from 16");
}

// 3. Exact penalty reduction identities for equal trials and dense prototypes.
void criterion_identities(CheckContext& ctx) {
  std::mt19937_64 rng(3301);
  int exact = 0;
  const int configs = 50;
  for (int rep = 0; rep < configs; ++rep) {
    const int k = 1 + static_cast<int>(rng() % 8);
    const int d = 2 + static_cast<int>(rng() % 29);
    const std::int64_t n0 = d + static_cast<std::int64_t>(rng() % 1000000);
    Mat protos(d, k);
    for (int j = 0; j < k; ++j) {
      Vec v(d);
      for (int i = 0; i < d; ++i) v[i] = 0.5 + static_cast<double>(rng() % 1000) / 1000.0;
      protos.col(j) = v / v.sum();
    }
    std::vector<int> labels(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) labels[static_cast<std::size_t>(j)] = j;
    const ClusterModel model = make_cluster_model(labels, ProbabilityMatrix(protos));
    MatI counts = MatI::Zero(d, k);
    for (int j = 0; j < k; ++j) {
      counts(0, j) = n0 - (d - 1);
      for (int i = 1; i < d; ++i) counts(i, j) = 1;
    }
    const CountMatrix x = validate_count_matrix(counts);
    const double n = static_cast<double>(x.total());
    const double target_aic = static_cast<double>((d - 1) * k);
    const double target_bic = target_aic * std::log(n);

    CriterionParams aic;
    const double got_aic = static_cast<double>(n0) * penalty(model, x, aic);
    CriterionParams bic;
    bic.s = 0.5;
    bic.gamma = std::log(n) / std::sqrt(static_cast<double>(n0));
    const double got_bic = static_cast<double>(n0) * penalty(model, x, bic);
    if (std::abs(got_aic - target_aic) <= 1e-12 * target_aic &&
        std::abs(got_bic - target_bic) <= 1e-12 * target_bic)
      ++exact;
  }
  ctx.note(std::to_string(exact) + "/" + std::to_string(configs) + " configs exact");
  ctx.require(exact == configs, "identity violated");
}

// 4. Greedy refinement vs brute-force enumeration of surjective labelings.
void criterion_mlqe_oracle(CheckContext& ctx) {
  std::mt19937_64 rng(4401);
  int solved = 0, stalls = 0;
  const int instances = 50;
  for (int rep = 0; rep < instances; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 3);        // <= 4
    const int t = 4 + static_cast<int>(rng() % 5);        // <= 8
    const double q = rep % 2 == 0 ? 1.0 : 0.5;
    const CountMatrix x = validate_count_matrix(random_counts(d, t, 20, rng));

    NmfParams np;
    np.seed = rng();
    const PreliminaryEstimate prelim = preliminary_estimate(x, 2, np);
    SearchParams sp;
    sp.q = q;
    sp.seed = rng();
    const RefineResult res = refine_labels(x, prelim.model, sp);

    double best = -std::numeric_limits<double>::infinity();
    std::vector<int> labels(static_cast<std::size_t>(t), 0);
    for (std::uint64_t code = 1; code + 1 < (1ULL << t); ++code) {  // skip constant labelings
      for (int i = 0; i < t; ++i)
        labels[static_cast<std::size_t>(i)] = static_cast<int>((code >> i) & 1ULL);
      best = std::max(best, profile_objective(cluster_counts(x, labels, 2), q));
    }
    if (res.objective >= best - 1e-9 * std::abs(best))
      ++solved;
    else
      ++stalls;
  }
  ctx.note(std::to_string(solved) + "/" + std::to_string(instances) + " optimal, " +
           std::to_string(stalls) + " stalls");
  ctx.require(solved >= 45, "too many greedy stalls");
}

// 5. Closed-form prototypes beat random simplex candidates.
void criterion_closed_form(CheckContext& ctx) {
  std::mt19937_64 rng(5501);
  const std::vector<double> qs = {0.3, 0.5, 0.9, 1.0};
  int columns_ok = 0;
  const int columns = 100;
  for (int rep = 0; rep < columns; ++rep) {
    const int d = 2 + static_cast<int>(rng() % 7);
    MatI m = random_counts(d, 1, 30, rng);
    bool all_q_ok = true;
    for (double q : qs) {
      const Vec proto = closed_form_prototypes(m, q).values().col(0);
      auto objective = [&](const Vec& cand) {
        double acc = 0.0;
        for (int i = 0; i < d; ++i) {
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
      const double ours = objective(proto);
      for (int cand = 0; cand < 10000; ++cand) {
        if (objective(random_simplex(d, rng)) > ours + 1e-9 * std::abs(ours)) {
          all_q_ok = false;
          break;
        }
      }
      if (!all_q_ok) break;
    }
    if (all_q_ok) ++columns_ok;
  }
  ctx.note(std::to_string(columns_ok) + "/" + std::to_string(columns) + " columns unbeaten");
  ctx.require(columns_ok == columns, "a random candidate beat the closed form");
}

// 6. Weighted-discrepancy limit constant.
void criterion_theorem1(CheckContext& ctx) {
  const auto rows = theorem1_check({10000.0}, 3000, 6601);
  const double est = rows.front().estimate;
  const double limit = rows.front().limit;
  std::ostringstream cell;
  cell << "estimate=" << est << " limit=" << limit;
  ctx.note(cell.str());
  ctx.require(std::abs(est - limit) <= 0.10 * limit, "estimate misses the limit by > 10%");
}

// 7. Split direction: discrepancies cancel exactly, penalty decides.
void criterion_theorem2_split(CheckContext& ctx) {
  std::mt19937_64 rng(7701);
  int ok = 0;
  const int instances = 100;
  for (int rep = 0; rep < instances; ++rep) {
    const int d = 3 + static_cast<int>(rng() % 8);
    const int k = 2 + static_cast<int>(rng() % 4);
    const int t = k + 2 + static_cast<int>(rng() % 7);
    Mat protos(d, k);
    for (int j = 0; j < k; ++j) protos.col(j) = random_simplex(d, rng);
    std::vector<int> labels(static_cast<std::size_t>(t));
    for (int j = 0; j < k; ++j) labels[static_cast<std::size_t>(j)] = j;
    for (int j = k; j < t; ++j)
      labels[static_cast<std::size_t>(j)] = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    labels[static_cast<std::size_t>(t - 1)] = k - 1;  // last cluster has >= 2 members
    labels[static_cast<std::size_t>(t - 2)] = k - 1;
    const ClusterModel truth = make_cluster_model(labels, ProbabilityMatrix(protos));
    VecI trials(t);
    for (int j = 0; j < t; ++j) trials[j] = 20 + static_cast<std::int64_t>(rng() % 500);
    const CountMatrix x = planted_multinomial(truth, trials, rng());

    std::vector<int> members;
    for (int j = 0; j < t; ++j)
      if (labels[static_cast<std::size_t>(j)] == k - 1) members.push_back(j);
    // A random proper non-empty subset moves to the duplicate cluster.
    std::vector<int> subset;
    for (std::size_t j = 0; j + 1 < members.size(); ++j)
      if (rng() % 2 == 0) subset.push_back(members[j]);
    if (subset.empty()) subset.push_back(members.front());
    const ClusterModel split = split_last(truth, subset);

    CriterionParams params;
    params.s = 0.5;
    params.gamma = std::log(static_cast<double>(x.total()));
    const double dd = std::abs(discrepancy(x, truth) - discrepancy(x, split));
    const double gap = delta(x, split, params) - delta(x, truth, params);
    if (dd < 1e-12 && gap > 0.0) ++ok;
  }
  ctx.note(std::to_string(ok) + "/" + std::to_string(instances) + " instances");
  ctx.require(ok == instances, "split direction violated");
}

// 8. Merge direction fraction across growing N.
void criterion_theorem2_merge(CheckContext& ctx) {
  Mat protos(8, 2);
  Vec base(8);
  base << 0.245, 0.245, 0.245, 0.245, 0.01, 0.01, 0.01, 0.01;
  base /= base.sum();
  protos.col(0) = base;
  protos.col(1) = base.reverse();
  const ClusterModel truth = make_cluster_model({0, 0, 1, 1}, ProbabilityMatrix(protos));

  const std::vector<std::int64_t> n_grid = {100, 1000, 10000};
  std::vector<double> fractions;
  const int reps = 200;
  for (std::int64_t n0 : n_grid) {
    VecI trials = VecI::Constant(4, n0);
    int hits = 0;
    for (int rep = 0; rep < reps; ++rep) {
      const CountMatrix x = planted_multinomial(
          truth, trials, mix_seed(8801 + static_cast<std::uint64_t>(rep),
                                  static_cast<std::uint64_t>(n0)));
      const ClusterModel merged = merge_last_two(truth, trials);
      CriterionParams params;
      params.s = 0.5;
      params.gamma = std::log(static_cast<double>(x.total()));
      if (delta(x, merged, params) > delta(x, truth, params)) ++hits;
    }
    fractions.push_back(static_cast<double>(hits) / reps);
  }
  std::ostringstream cell;
  cell << "fractions=" << fractions[0] << "," << fractions[1] << "," << fractions[2];
  ctx.note(cell.str());
  ctx.require(fractions[0] <= fractions[1] + 1e-12 && fractions[1] <= fractions[2] + 1e-12,
              "fraction not monotone");
  ctx.require(fractions[2] >= 0.99, "fraction below 0.99 at N = 10^4");
}

// 9. SBM clustering quality.
void criterion_sbm(CheckContext& ctx) {
  const auto rows = sbm_experiment({40, 100}, 100, 9901);
  std::ostringstream cell;
  cell << "ari(40)=" << rows[0].ari_delta << " ari(100)=" << rows[1].ari_delta;
  ctx.note(cell.str());
  ctx.require(rows[0].ari_delta >= 0.3, "mean ARI below 0.3 at n = 40");
  ctx.require(rows[1].ari_delta >= 0.8, "mean ARI below 0.8 at n = 100");
}

// 10. Property spot checks.
void criterion_properties(CheckContext& ctx) {
  std::mt19937_64 rng(1001);
  std::normal_distribution<double> normal;

  {  // Eckart-Young optimality.
    bool ok = true;
    for (int rep = 0; rep < 5 && ok; ++rep) {
      Mat m(6, 5);
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 5; ++j) m(i, j) = normal(rng);
      const int k = 1 + static_cast<int>(rng() % 3);
      Eigen::BDCSVD<Mat> svd(m);
      double tail = 0.0;
      for (Eigen::Index i = k; i < svd.singularValues().size(); ++i)
        tail += svd.singularValues()[i] * svd.singularValues()[i];
      const double err = (m - reduced_rank_projection(m, k)).norm();
      ok = ok && std::abs(err - std::sqrt(tail)) <= 1e-8;
      for (int cand = 0; cand < 100 && ok; ++cand) {
        Mat a(6, k), b(k, 5);
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < k; ++j) a(i, j) = normal(rng);
        for (int i = 0; i < k; ++i)
          for (int j = 0; j < 5; ++j) b(i, j) = normal(rng);
        ok = (m - a * b).norm() >= err - 1e-8;
      }
    }
    ctx.require(ok, "Eckart-Young spot check failed");
  }

  {  // NMF objective monotonicity.
    bool ok = true;
    for (int rep = 0; rep < 3 && ok; ++rep) {
      Mat raw = random_counts(6, 5, 25, rng).cast<double>();
      for (int j = 0; j < 5; ++j) raw.col(j) /= raw.col(j).sum();
      NmfParams np;
      np.seed = rng();
      np.max_iters = 200;
      const NmfOutcome out = nmf(ProbabilityMatrix(raw), 2, np);
      for (std::size_t i = 1; i < out.objective_history.size(); ++i)
        ok = ok && out.objective_history[i] <= out.objective_history[i - 1] + 1e-9;
    }
    ctx.require(ok, "NMF monotonicity failed");
  }

  {  // ARI vs an O(T^2) pair-counting oracle.
    bool ok = true;
    for (int rep = 0; rep < 200 && ok; ++rep) {
      const int t = 2 + static_cast<int>(rng() % 7);
      std::vector<int> a(static_cast<std::size_t>(t)), b(static_cast<std::size_t>(t));
      for (int i = 0; i < t; ++i) {
        a[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 3);
        b[static_cast<std::size_t>(i)] = static_cast<int>(rng() % 3);
      }
      double n11 = 0, n00 = 0, n10 = 0, n01 = 0;
      for (int i = 0; i < t; ++i)
        for (int j = i + 1; j < t; ++j) {
          const bool sa = a[static_cast<std::size_t>(i)] == a[static_cast<std::size_t>(j)];
          const bool sb = b[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)];
          if (sa && sb)
            ++n11;
          else if (!sa && !sb)
            ++n00;
          else if (sa)
            ++n10;
          else
            ++n01;
        }
      const double denom = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00);
      const double oracle = denom == 0.0 ? 1.0 : 2.0 * (n11 * n00 - n10 * n01) / denom;
      ok = std::abs(adjusted_rand_index(a, b) - oracle) <= 1e-12;
    }
    ctx.require(ok, "ARI oracle equivalence failed");
  }

  {  // Gibbs lower bound.
    bool ok = true;
    for (int rep = 0; rep < 50 && ok; ++rep) {
      const int d = 2 + static_cast<int>(rng() % 5);
      const int t = 2 + static_cast<int>(rng() % 5);
      const int k = 1 + static_cast<int>(rng() % 3);
      const CountMatrix x = validate_count_matrix(random_counts(d, t, 25, rng));
      Mat protos(d, k);
      for (int j = 0; j < k; ++j) protos.col(j) = random_simplex(d, rng);
      std::vector<int> labels(static_cast<std::size_t>(t));
      for (int i = 0; i < t; ++i)
        labels[static_cast<std::size_t>(i)] = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
      const ClusterModel model = make_cluster_model(labels, ProbabilityMatrix(protos));
      const auto p = empirical_probabilities(x);
      double ent = 0.0;
      for (int j = 0; j < t; ++j) ent += entropy(p.col(j));
      ok = discrepancy(x, model) >= ent - 1e-9;
    }
    ctx.require(ok, "Gibbs bound failed");
  }

  {  // Delta permutation invariance.
    bool ok = true;
    for (int rep = 0; rep < 20 && ok; ++rep) {
      const int d = 3 + static_cast<int>(rng() % 4);
      const int t = 3 + static_cast<int>(rng() % 4);
      const CountMatrix x = validate_count_matrix(random_counts(d, t, 20, rng));
      Mat protos(d, 2);
      protos.col(0) = random_simplex(d, rng);
      protos.col(1) = random_simplex(d, rng);
      std::vector<int> labels(static_cast<std::size_t>(t));
      for (int i = 0; i < t; ++i) labels[static_cast<std::size_t>(i)] = i % 2;
      const ClusterModel model = make_cluster_model(labels, ProbabilityMatrix(protos));
      std::vector<int> swapped = labels;
      for (int& lab : swapped) lab = 1 - lab;
      const ClusterModel other =
          make_cluster_model(swapped, ProbabilityMatrix(protos.rowwise().reverse().eval()));
      CriterionParams params;
      ok = std::abs(delta(x, model, params) - delta(x, other, params)) <=
           1e-12 * std::max(1.0, std::abs(delta(x, model, params)));
    }
    ctx.require(ok, "delta permutation invariance failed");
  }

  {  // Generator determinism.
    bool ok = two_cluster_sparse(30, 100, 5).x.entries == two_cluster_sparse(30, 100, 5).x.entries;
    ok = ok && !(two_cluster_sparse(30, 100, 5).x.entries ==
                 two_cluster_sparse(30, 100, 6).x.entries);
    SbmData s1 = sbm_graphs(two_pattern_sbm_specs(40), 2, 9);
    SbmData s2 = sbm_graphs(two_pattern_sbm_specs(40), 2, 9);
    ok = ok && s1.x.entries == s2.x.entries;
    BlockGraphSpec spec{two_pattern_rate_matrices(), 10, 0.5, 100.0};
    ok = ok && block_poisson_graphs(spec, 4)[0] == block_poisson_graphs(spec, 4)[0];
    ok = ok && swimmer_matrix().entries == swimmer_matrix().entries;
    ctx.require(ok, "generator determinism failed");
  }
}

struct Criterion {
  const char* name;
  void (*run)(CheckContext&);
};

const Criterion kCriteria[] = {
    {"two-cluster-selection-counts", criterion_two_cluster_counts},
    {"swimmer-inner-dimension", criterion_swimmer},
    {"penalty-reduction-identities", criterion_identities},
    {"mlqe-oracle-equivalence", criterion_mlqe_oracle},
    {"closed-form-optimality", criterion_closed_form},
    {"theorem1-constant", criterion_theorem1},
    {"theorem2-split-direction", criterion_theorem2_split},
    {"theorem2-merge-direction", criterion_theorem2_merge},
    {"sbm-clustering", criterion_sbm},
    {"property-suites", criterion_properties},
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const int total = static_cast<int>(std::size(kCriteria));
  bool all_ok = true;
  for (int i = 1; i <= total; ++i) {
    if (only != 0 && only != i) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckContext ctx;
    try {
      kCriteria[i - 1].run(ctx);
    } catch (const std::exception& e) {
      ctx.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%d/%d] %-30s %s (%.1fs%s%s)\n", i, total, kCriteria[i - 1].name,
                ctx.ok ? "PASS" : "FAIL", secs, ctx.detail.str().empty() ? "" : "; ",
                ctx.detail.str().c_str());
    std::fflush(stdout);
    all_ok = all_ok && ctx.ok;
  }
  return all_ok ? 0 : 1;
}
