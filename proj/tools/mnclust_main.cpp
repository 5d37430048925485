#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mnclust/baselines.hpp"
#include "mnclust/core.hpp"
#include "mnclust/datagen.hpp"
#include "mnclust/experiments.hpp"
#include "mnclust/selection.hpp"
#include "mnclust/version.hpp"

namespace {

using namespace mnclust;

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw InputError(0, 0, "cannot open '" + path + "' for writing");
  return file;
}

void write_meta(std::ostream& out, std::uint64_t seed) {
  out << "# seed=" << seed << ", version=" << kVersion << '\n';
}

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct SweepOptions {
  std::string matrix_path;
  bool header = false;
  int kmin = 1, kmax = 0;
  CriterionParams criterion;
  std::uint64_t seed = 1;
  bool no_refine = false;
  std::string out_path;
};

int run_sweep(const SweepOptions& opt) {
  CountMatrix x = read_count_csv_file(opt.matrix_path, opt.header);
  const int maxk = static_cast<int>(std::min(x.dim(), x.len()));
  const int kmax = opt.kmax > 0 ? opt.kmax : maxk;
  NmfParams np;
  np.seed = opt.seed;
  SearchParams sp;
  sp.q = opt.criterion.q;
  sp.seed = opt.seed;
  SelectionReport report =
      sweep(x, opt.kmin, kmax, opt.criterion, np, sp, !opt.no_refine);
  std::ofstream file;
  std::ostream& out = open_output(file, opt.out_path);
  write_report_csv(out, report, opt.seed);
  return 0;
}

struct Table2Options {
  std::vector<int> d_list = {25, 50, 100};
  int reps = 100;
  std::int64_t n_trials = 200;
  std::uint64_t seed = 1;
  std::string out_path;
};

int run_mc_table2(const Table2Options& opt) {
  const auto rows = mc_table2(opt.d_list, opt.reps, opt.n_trials, opt.seed);
  std::ofstream file;
  std::ostream& out = open_output(file, opt.out_path);
  out << "d,delta_successes,aic_successes\n";
  for (const auto& row : rows)
    out << row.d << ',' << row.delta_successes << ',' << row.aic_successes << '\n';
  write_meta(out, opt.seed);
  return 0;
}

struct GraphOptions {
  std::string mode = "sbm";
  std::vector<double> rho_list = {0.2, 0.6, 1.0};
  std::vector<int> c_list = {5, 10, 20, 25, 50, 100};
  std::vector<int> n_list = {40, 60, 80, 100};
  int reps = 20;
  std::uint64_t seed = 1;
  std::string out_path;
};

int run_graph_experiment(const GraphOptions& opt) {
  std::ofstream file;
  std::ostream& out = open_output(file, opt.out_path);
  if (opt.mode == "sbm") {
    const auto rows = sbm_experiment(opt.n_list, opt.reps, opt.seed);
    out << "n,ari_delta,ari_pam,ari_elbow\n";
    for (const auto& row : rows)
      out << row.n << ',' << fmt(row.ari_delta, 4) << ',' << fmt(row.ari_pam, 4) << ','
          << fmt(row.ari_elbow, 4) << '\n';
  } else {
    const auto rows = poisson_block_experiment(opt.rho_list, opt.c_list, opt.reps, opt.seed);
    out << "rho,c,ari_delta,ari_pam,ari_elbow\n";
    for (const auto& row : rows)
      out << fmt(row.rho, 3) << ',' << row.c << ',' << fmt(row.ari_delta, 4) << ','
          << fmt(row.ari_pam, 4) << ',' << fmt(row.ari_elbow, 4) << '\n';
  }
  write_meta(out, opt.seed);
  return 0;
}

struct TheoremOptions {
  std::string which = "t1";
  std::vector<double> ells = {100, 1000, 10000};
  std::vector<int> sizes = {40, 80, 160};
  int reps = 0;  // 0 = per-check default
  std::uint64_t seed = 1;
  std::string out_path;
};

int run_theorem_check(const TheoremOptions& opt) {
  std::ofstream file;
  std::ostream& out = open_output(file, opt.out_path);
  if (opt.which == "t1") {
    const int reps = opt.reps > 0 ? opt.reps : 2000;
    const auto rows = theorem1_check(opt.ells, reps, opt.seed);
    out << "ell,estimate,limit,rel_err\n";
    for (const auto& row : rows)
      out << fmt(row.ell, 0) << ',' << fmt(row.estimate) << ',' << fmt(row.limit) << ','
          << fmt(std::abs(row.estimate - row.limit) / row.limit) << '\n';
  } else {
    const int reps = opt.reps > 0 ? opt.reps : 20;
    const auto rows = theorem3_check(opt.sizes, reps, opt.seed);
    out << "d,t,cap,mse\n";
    for (const auto& row : rows)
      out << row.d << ',' << row.t << ',' << fmt(row.cap, 3) << ',' << fmt(row.mse) << '\n';
  }
  write_meta(out, opt.seed);
  return 0;
}

struct GenOptions {
  std::string what = "swimmer";
  std::string out_path;
  std::string truth_path;
  std::string pgm_dir;
  int d = 50;
  std::int64_t n_trials = 200;
  int n = 100;
  int copies = 3;
  double rho = 1.0;
  int agg_c = 5;
  std::uint64_t seed = 1;
};

void write_labels_csv(const std::string& path, const std::vector<int>& labels,
                      std::uint64_t seed) {
  std::ofstream out(path);
  if (!out) throw InputError(0, 0, "cannot open '" + path + "' for writing");
  out << "t,label\n";
  for (std::size_t t = 0; t < labels.size(); ++t)
    out << t + 1 << ',' << labels[t] + 1 << '\n';
  write_meta(out, seed);
}

int run_gen(const GenOptions& opt) {
  if (opt.what == "swimmer") {
    const CountMatrix x = swimmer_matrix();
    if (!opt.out_path.empty())
      write_count_csv_file(opt.out_path, x.entries);
    else
      write_count_csv(std::cout, x.entries);
    if (!opt.pgm_dir.empty()) write_swimmer_pgms(opt.pgm_dir);
    return 0;
  }
  if (opt.what == "two-cluster") {
    PlantedData data = two_cluster_sparse(opt.d, opt.n_trials, opt.seed);
    if (!opt.out_path.empty())
      write_count_csv_file(opt.out_path, data.x.entries);
    else
      write_count_csv(std::cout, data.x.entries);
    if (!opt.truth_path.empty()) write_labels_csv(opt.truth_path, data.truth.labels, opt.seed);
    return 0;
  }
  if (opt.what == "sbm") {
    SbmData data = sbm_graphs(two_pattern_sbm_specs(opt.n), opt.copies, opt.seed);
    if (!opt.out_path.empty())
      write_count_csv_file(opt.out_path, data.x.entries);
    else
      write_count_csv(std::cout, data.x.entries);
    if (!opt.truth_path.empty()) write_labels_csv(opt.truth_path, data.true_labels, opt.seed);
    return 0;
  }
  if (opt.what == "poisson-blocks") {
    BlockGraphSpec spec{two_pattern_rate_matrices(), 20, opt.rho, 100.0};
    const auto graphs = block_poisson_graphs(spec, opt.seed);
    const auto groups = contiguous_groups(static_cast<int>(graphs.front().rows()), opt.agg_c);
    std::vector<MatI> agg;
    for (const MatI& g : graphs) agg.push_back(aggregate_graph(g, groups));
    const CountMatrix x = vectorize_graphs(agg, VectorizeMode::Full);
    if (!opt.out_path.empty())
      write_count_csv_file(opt.out_path, x.entries);
    else
      write_count_csv(std::cout, x.entries);
    return 0;
  }
  throw InputError(0, 0, "unknown generator '" + opt.what + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustering of multinomial count sequences with zero-aware model selection"};
  // TOML-style config file; keys live under a [subcommand] section and
  // explicit flags take precedence.
  app.set_config("--config", "", "TOML-style config file (sections per subcommand)");
  app.require_subcommand(1);

  SweepOptions sweep_opt;
  auto* sweep_cmd = app.add_subcommand("sweep", "Run the K-selection sweep on a CSV count matrix");
  sweep_cmd->add_option("matrix", sweep_opt.matrix_path, "CSV count matrix (rows = dimensions)")
      ->required();
  sweep_cmd->add_flag("--header", sweep_opt.header, "Skip one header line");
  sweep_cmd->add_option("--kmin", sweep_opt.kmin, "Smallest K (default 1)");
  sweep_cmd->add_option("--kmax", sweep_opt.kmax, "Largest K (default min(d, T))");
  sweep_cmd->add_option("--s", sweep_opt.criterion.s, "Penalty exponent s");
  sweep_cmd->add_option("--gamma", sweep_opt.criterion.gamma, "Penalty weight gamma");
  sweep_cmd->add_option("--q", sweep_opt.criterion.q, "Lq parameter in (0, 1]");
  sweep_cmd->add_option("--tau", sweep_opt.criterion.zero_threshold, "Zero-count threshold");
  sweep_cmd->add_option("--near-tie", sweep_opt.criterion.near_tie_rel,
                        "Relative near-tie tolerance");
  sweep_cmd->add_option("--seed", sweep_opt.seed, "Random seed");
  sweep_cmd->add_flag("--no-refine", sweep_opt.no_refine,
                      "Skip the coordinate-ascent refinement");
  sweep_cmd->add_option("--out", sweep_opt.out_path, "Output CSV path (default stdout)");

  Table2Options t2_opt;
  auto* t2_cmd = app.add_subcommand("mc-table2", "Monte Carlo two-cluster selection counts");
  t2_cmd->add_option("--d-list", t2_opt.d_list, "Dimensions to test")->delimiter(',');
  t2_cmd->add_option("--reps", t2_opt.reps, "Replicates per dimension");
  t2_cmd->add_option("--n-trials", t2_opt.n_trials, "Multinomial trials per column");
  t2_cmd->add_option("--seed", t2_opt.seed, "Base seed (replicate r uses seed + r)");
  t2_cmd->add_option("--out", t2_opt.out_path, "Output CSV path (default stdout)");

  GraphOptions g_opt;
  auto* g_cmd = app.add_subcommand("graph-experiment", "ARI comparison on random-graph data");
  g_cmd->add_option("--mode", g_opt.mode, "poisson-blocks or sbm")
      ->check(CLI::IsMember({"poisson-blocks", "sbm"}));
  g_cmd->add_option("--rho", g_opt.rho_list, "Intensities (poisson-blocks)")->delimiter(',');
  g_cmd->add_option("--agg-c", g_opt.c_list, "Aggregated vertex counts")->delimiter(',');
  g_cmd->add_option("--n", g_opt.n_list, "Vertex counts (sbm)")->delimiter(',');
  g_cmd->add_option("--reps", g_opt.reps, "Replicates per configuration");
  g_cmd->add_option("--seed", g_opt.seed, "Base seed");
  g_cmd->add_option("--out", g_opt.out_path, "Output CSV path (default stdout)");

  TheoremOptions th_opt;
  auto* th_cmd = app.add_subcommand("theorem-check", "Monte Carlo checks of the limit results");
  th_cmd->add_option("--which", th_opt.which, "t1 or t3")->check(CLI::IsMember({"t1", "t3"}));
  th_cmd->add_option("--ell", th_opt.ells, "Trial scales for t1")->delimiter(',');
  th_cmd->add_option("--grid", th_opt.sizes, "Square sizes for t3")->delimiter(',');
  th_cmd->add_option("--reps", th_opt.reps, "Replicates");
  th_cmd->add_option("--seed", th_opt.seed, "Base seed");
  th_cmd->add_option("--out", th_opt.out_path, "Output CSV path (default stdout)");

  GenOptions gen_opt;
  auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic data sets as CSV");
  gen_cmd->add_option("--what", gen_opt.what, "swimmer, two-cluster, sbm or poisson-blocks")
      ->check(CLI::IsMember({"swimmer", "two-cluster", "sbm", "poisson-blocks"}));
  gen_cmd->add_option("--out", gen_opt.out_path, "Output CSV path (default stdout)");
  gen_cmd->add_option("--truth-out", gen_opt.truth_path, "Write true labels CSV");
  gen_cmd->add_option("--pgm-dir", gen_opt.pgm_dir, "Dump one PGM per column (swimmer)");
  gen_cmd->add_option("--d", gen_opt.d, "Dimension (two-cluster)");
  gen_cmd->add_option("--n-trials", gen_opt.n_trials, "Trials per column (two-cluster)");
  gen_cmd->add_option("--n", gen_opt.n, "Vertices (sbm)");
  gen_cmd->add_option("--copies", gen_opt.copies, "Graphs per pattern (sbm)");
  gen_cmd->add_option("--rho", gen_opt.rho, "Intensity (poisson-blocks)");
  gen_cmd->add_option("--agg-c", gen_opt.agg_c, "Aggregated vertex count (poisson-blocks)");
  gen_cmd->add_option("--seed", gen_opt.seed, "Random seed");

  try {
    app.parse(argc, argv);
    if (sweep_cmd->parsed()) return run_sweep(sweep_opt);
    if (t2_cmd->parsed()) return run_mc_table2(t2_opt);
    if (g_cmd->parsed()) return run_graph_experiment(g_opt);
    if (th_cmd->parsed()) return run_theorem_check(th_opt);
    if (gen_cmd->parsed()) return run_gen(gen_opt);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const mnclust::Error& e) {
    // Validation failures are input problems: bad CSV, bad ranges, bad params.
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
