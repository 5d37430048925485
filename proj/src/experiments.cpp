#include "mnclust/experiments.hpp"

#include <cmath>
#include <limits>

#include "mnclust/baselines.hpp"
#include "mnclust/core.hpp"
#include "mnclust/datagen.hpp"
#include "mnclust/lowrank.hpp"
#include "mnclust/metrics.hpp"
#include "mnclust/threading.hpp"

namespace mnclust {

int conventional_choice(const CountMatrix& x, const std::vector<FittedModel>& fits,
                        ConventionalKind kind) {
  const int d = static_cast<int>(x.dim());
  int best_k = fits.front().k;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& fit : fits) {
    const double score =
        log_loss(x, fit.model) + conventional_penalty(kind, fit.k, d, x.total());
    if (score < best) {
      best = score;
      best_k = fit.k;
    }
  }
  return best_k;
}

namespace {

const FittedModel& fit_for_k(const std::vector<FittedModel>& fits, int k) {
  for (const auto& f : fits)
    if (f.k == k) return f;
  throw Error("no fit for chosen k");
}

}  // namespace

std::vector<Table2Row> mc_table2(const std::vector<int>& d_list, int reps,
                                 std::int64_t n_trials, std::uint64_t base_seed, int threads) {
  const int nd = static_cast<int>(d_list.size());
  std::vector<char> delta_hit(static_cast<std::size_t>(nd * reps), 0);
  std::vector<char> aic_hit(static_cast<std::size_t>(nd * reps), 0);
  parallel_for(nd * reps, [&](int idx) {
    const int di = idx / reps;
    const int rep = idx % reps;
    const std::uint64_t rep_seed = base_seed + static_cast<std::uint64_t>(rep);
    const std::uint64_t seed = mix_seed(rep_seed, static_cast<std::uint64_t>(d_list[di]));
    PlantedData data = two_cluster_sparse(d_list[di], n_trials, seed);
    NmfParams np;
    np.seed = mix_seed(seed, 2);
    SearchParams sp;
    sp.seed = mix_seed(seed, 3);
    const auto fits = fit_models(data.x, 1, 2, np, sp, true);
    const SelectionReport report = evaluate_models(data.x, fits, CriterionParams{});
    delta_hit[static_cast<std::size_t>(idx)] = report.chosen_k == 2;
    aic_hit[static_cast<std::size_t>(idx)] =
        conventional_choice(data.x, fits, ConventionalKind::AIC) == 2;
  }, threads);
  std::vector<Table2Row> rows;
  for (int di = 0; di < nd; ++di) {
    Table2Row row;
    row.d = d_list[static_cast<std::size_t>(di)];
    for (int rep = 0; rep < reps; ++rep) {
      row.delta_successes += delta_hit[static_cast<std::size_t>(di * reps + rep)];
      row.aic_successes += aic_hit[static_cast<std::size_t>(di * reps + rep)];
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct AriTriple {
  double ours = 0.0, pam = 0.0, elbow = 0.0;
};

AriTriple cluster_and_score(const CountMatrix& x, const std::vector<int>& truth,
                            std::uint64_t seed) {
  const int t = static_cast<int>(x.len());
  const int k_max = static_cast<int>(std::min<Eigen::Index>(x.dim(), t));
  NmfParams np;
  np.seed = mix_seed(seed, 11);
  SearchParams sp;
  sp.seed = mix_seed(seed, 13);
  const auto fits = fit_models(x, 1, k_max, np, sp, true);
  const SelectionReport report = evaluate_models(x, fits, CriterionParams{});
  AriTriple out;
  out.ours = adjusted_rand_index(fit_for_k(fits, report.chosen_k).model.labels, truth);
  out.pam = adjusted_rand_index(pam_silhouette(x, 2, t - 1).labels, truth);
  out.elbow = adjusted_rand_index(elbow_kmeans(x, k_max, mix_seed(seed, 17)).labels, truth);
  return out;
}

}  // namespace

std::vector<SbmAriRow> sbm_experiment(const std::vector<int>& n_list, int reps,
                                      std::uint64_t base_seed, int threads) {
  const int nn = static_cast<int>(n_list.size());
  std::vector<AriTriple> cells(static_cast<std::size_t>(nn * reps));
  parallel_for(nn * reps, [&](int idx) {
    const int ni = idx / reps;
    const int rep = idx % reps;
    const std::uint64_t rep_seed = base_seed + static_cast<std::uint64_t>(rep);
    const std::uint64_t seed = mix_seed(rep_seed, 1000 + static_cast<std::uint64_t>(n_list[ni]));
    SbmData data = sbm_graphs(two_pattern_sbm_specs(n_list[ni]), 3, seed);
    cells[static_cast<std::size_t>(idx)] = cluster_and_score(data.x, data.true_labels, seed);
  }, threads);
  std::vector<SbmAriRow> rows;
  for (int ni = 0; ni < nn; ++ni) {
    SbmAriRow row;
    row.n = n_list[static_cast<std::size_t>(ni)];
    for (int rep = 0; rep < reps; ++rep) {
      const AriTriple& c = cells[static_cast<std::size_t>(ni * reps + rep)];
      row.ari_delta += c.ours;
      row.ari_pam += c.pam;
      row.ari_elbow += c.elbow;
    }
    row.ari_delta /= reps;
    row.ari_pam /= reps;
    row.ari_elbow /= reps;
    rows.push_back(row);
  }
  return rows;
}

std::vector<PoissonAriRow> poisson_block_experiment(const std::vector<double>& rho_list,
                                                    const std::vector<int>& c_list, int reps,
                                                    std::uint64_t base_seed, int threads) {
  const int ncfg = static_cast<int>(rho_list.size() * c_list.size());
  std::vector<AriTriple> cells(static_cast<std::size_t>(ncfg * reps));
  const std::vector<int> truth = {0, 1};
  parallel_for(ncfg * reps, [&](int idx) {
    const int cfg = idx / reps;
    const int rep = idx % reps;
    const double rho = rho_list[static_cast<std::size_t>(cfg) / c_list.size()];
    const int c = c_list[static_cast<std::size_t>(cfg) % c_list.size()];
    const std::uint64_t rep_seed = base_seed + static_cast<std::uint64_t>(rep);
    const std::uint64_t seed =
        mix_seed(rep_seed, 555 + static_cast<std::uint64_t>(cfg));
    BlockGraphSpec spec{two_pattern_rate_matrices(), 20, rho, 100.0};
    const auto graphs = block_poisson_graphs(spec, seed);
    const auto groups = contiguous_groups(static_cast<int>(graphs.front().rows()), c);
    std::vector<MatI> aggregated;
    aggregated.reserve(graphs.size());
    for (const MatI& g : graphs) aggregated.push_back(aggregate_graph(g, groups));
    const CountMatrix x = vectorize_graphs(aggregated, VectorizeMode::Full);
    cells[static_cast<std::size_t>(idx)] = cluster_and_score(x, truth, seed);
  }, threads);
  std::vector<PoissonAriRow> rows;
  int cfg = 0;
  for (double rho : rho_list)
    for (int c : c_list) {
      PoissonAriRow row;
      row.rho = rho;
      row.c = c;
      for (int rep = 0; rep < reps; ++rep) {
        const AriTriple& cell = cells[static_cast<std::size_t>(cfg * reps + rep)];
        row.ari_delta += cell.ours;
        row.ari_pam += cell.pam;
        row.ari_elbow += cell.elbow;
      }
      row.ari_delta /= reps;
      row.ari_pam /= reps;
      row.ari_elbow /= reps;
      rows.push_back(row);
      ++cfg;
    }
  return rows;
}

namespace {

ClusterModel theorem1_instance() {
  Mat protos(6, 2);
  protos.col(0) << 0.25, 0.22, 0.20, 0.18, 0.15, 0.0;
  protos.col(1) << 0.0, 0.15, 0.18, 0.20, 0.22, 0.25;
  return make_cluster_model({0, 1}, ProbabilityMatrix(std::move(protos)));
}

}  // namespace

std::vector<Theorem1Row> theorem1_check(const std::vector<double>& ells, int reps,
                                        std::uint64_t base_seed, int threads) {
  const ClusterModel truth = theorem1_instance();
  std::vector<Theorem1Row> rows;
  for (double ell : ells) {
    const auto n_t = static_cast<std::int64_t>(ell);  // lambda_bar = (1, 1)
    VecI trials(2);
    trials << n_t, n_t;
    Mat x_expected(6, 2);
    for (int t = 0; t < 2; ++t)
      x_expected.col(t) = static_cast<double>(n_t) * truth.prototypes.col(t);
    const double phi_star = weighted_discrepancy_phi(truth.prototypes, x_expected, trials,
                                                     truth.labels, truth.K);
    std::vector<double> phis(static_cast<std::size_t>(reps), 0.0);
    parallel_for(reps, [&](int rep) {
      const std::uint64_t seed =
          mix_seed(base_seed + static_cast<std::uint64_t>(rep), static_cast<std::uint64_t>(ell));
      const CountMatrix x = planted_multinomial(truth, trials, seed);
      phis[static_cast<std::size_t>(rep)] = weighted_discrepancy_phi(
          empirical_probabilities(x), x_expected, trials, truth.labels, truth.K);
    }, threads);
    double mean = 0.0;
    for (double v : phis) mean += v;
    mean /= reps;
    Vec z(2), n(2), lambda(2);
    z << 5.0, 5.0;
    n << 1.0, 1.0;
    lambda << 1.0, 1.0;
    rows.push_back(Theorem1Row{ell, ell * (mean - phi_star),
                               theorem1_limit_constant(z, n, lambda)});
  }
  return rows;
}

std::vector<Theorem3Row> theorem3_check(const std::vector<int>& sizes, int reps,
                                        std::uint64_t base_seed, int threads) {
  std::vector<Theorem3Row> rows;
  for (int size : sizes) {
    const int d = size, t = size;
    const double cap = 2.0 * std::pow(std::pow(static_cast<double>(t), 3) / d, 0.125);
    // Rank-2 block mean, values 4 / 1 on a 2x2 checkerboard.
    Mat mean(d, t);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < t; ++j)
        mean(i, j) = ((i < d / 2) == (j < t / 2)) ? 4.0 : 1.0;
    std::vector<double> mses(static_cast<std::size_t>(reps), 0.0);
    parallel_for(reps, [&](int rep) {
      std::mt19937_64 rng(mix_seed(base_seed + static_cast<std::uint64_t>(rep),
                                   static_cast<std::uint64_t>(size)));
      MatI x(d, t);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < t; ++j) {
          std::poisson_distribution<std::int64_t> pois(mean(i, j));
          x(i, j) = pois(rng);
        }
      const CountMatrix cm{x, VecI::Ones(t)};  // trial counts unused here
      const Mat truncated = truncate_counts(cm, cap).cast<double>();
      mses[static_cast<std::size_t>(rep)] =
          projection_mse(reduced_rank_projection(truncated, 2), mean);
    }, threads);
    double avg = 0.0;
    for (double v : mses) avg += v;
    rows.push_back(Theorem3Row{d, t, cap, avg / reps});
  }
  return rows;
}

}  // namespace mnclust
