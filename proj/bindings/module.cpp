#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mnclust/baselines.hpp"
#include "mnclust/core.hpp"
#include "mnclust/datagen.hpp"
#include "mnclust/experiments.hpp"
#include "mnclust/factorize.hpp"
#include "mnclust/lowrank.hpp"
#include "mnclust/metrics.hpp"
#include "mnclust/mlqe.hpp"
#include "mnclust/selection.hpp"
#include "mnclust/version.hpp"

namespace py = pybind11;
using namespace mnclust;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Clustering of multinomial count sequences with zero-aware model selection";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "MnclustError");

  py::class_<CountMatrix>(m, "CountMatrix")
      .def_property_readonly("entries", [](const CountMatrix& x) { return x.entries; })
      .def_property_readonly("trial_counts", [](const CountMatrix& x) { return x.trial_counts; })
      .def_property_readonly("d", &CountMatrix::dim)
      .def_property_readonly("t", &CountMatrix::len)
      .def_property_readonly("total", &CountMatrix::total);

  py::class_<ProbabilityMatrix>(m, "ProbabilityMatrix")
      .def(py::init<Mat>())
      .def_property_readonly("values", &ProbabilityMatrix::values);

  py::class_<ClusterModel>(m, "ClusterModel")
      .def(py::init([](std::vector<int> labels, Mat prototypes) {
             return make_cluster_model(std::move(labels), ProbabilityMatrix(std::move(prototypes)));
           }),
           py::arg("labels"), py::arg("prototypes"))
      .def_property_readonly("labels", [](const ClusterModel& c) { return c.labels; })
      .def_property_readonly("prototypes",
                             [](const ClusterModel& c) { return c.prototypes.values(); })
      .def_readonly("k", &ClusterModel::K)
      .def("cluster_sizes", &ClusterModel::cluster_sizes)
      .def("is_surjective", &ClusterModel::is_surjective);

  py::class_<Factorization>(m, "Factorization")
      .def_readonly("basis", &Factorization::basis)
      .def_readonly("weights", &Factorization::weights);

  py::class_<CriterionParams>(m, "CriterionParams")
      .def(py::init<>())
      .def_readwrite("s", &CriterionParams::s)
      .def_readwrite("gamma", &CriterionParams::gamma)
      .def_readwrite("q", &CriterionParams::q)
      .def_readwrite("zero_threshold", &CriterionParams::zero_threshold)
      .def_readwrite("near_tie_rel", &CriterionParams::near_tie_rel);

  py::class_<NmfParams>(m, "NmfParams")
      .def(py::init<>())
      .def_readwrite("max_iters", &NmfParams::max_iters)
      .def_readwrite("tol", &NmfParams::tol)
      .def_readwrite("restarts", &NmfParams::restarts)
      .def_readwrite("seed", &NmfParams::seed);

  py::class_<SearchParams>(m, "SearchParams")
      .def(py::init<>())
      .def_readwrite("q", &SearchParams::q)
      .def_readwrite("max_sweeps", &SearchParams::max_sweeps)
      .def_readwrite("seed", &SearchParams::seed);

  py::class_<NmfOutcome>(m, "NmfOutcome")
      .def_readonly("factors", &NmfOutcome::factors)
      .def_readonly("objective", &NmfOutcome::objective)
      .def_readonly("converged", &NmfOutcome::converged)
      .def_readonly("objective_history", &NmfOutcome::objective_history);

  py::class_<PreliminaryEstimate>(m, "PreliminaryEstimate")
      .def_readonly("model", &PreliminaryEstimate::model)
      .def_readonly("nmf_converged", &PreliminaryEstimate::nmf_converged)
      .def_readonly("nmf_objective", &PreliminaryEstimate::nmf_objective);

  py::class_<RefineResult>(m, "RefineResult")
      .def_readonly("model", &RefineResult::model)
      .def_readonly("objective", &RefineResult::objective)
      .def_readonly("sweeps", &RefineResult::sweeps)
      .def_readonly("reached_fixed_point", &RefineResult::reached_fixed_point);

  py::class_<PerKRecord>(m, "PerKRecord")
      .def_readonly("k", &PerKRecord::k)
      .def_readonly("discrepancy", &PerKRecord::discrepancy)
      .def_readonly("penalty", &PerKRecord::penalty)
      .def_readonly("delta", &PerKRecord::delta)
      .def_readonly("z_counts", &PerKRecord::z_counts)
      .def_readonly("n_counts", &PerKRecord::n_counts)
      .def_readonly("converged", &PerKRecord::converged)
      .def_readonly("support_violation", &PerKRecord::support_violation)
      .def_readonly("dominated", &PerKRecord::dominated);

  py::class_<SelectionReport>(m, "SelectionReport")
      .def_readonly("per_k", &SelectionReport::per_k)
      .def_readonly("chosen_k", &SelectionReport::chosen_k)
      .def("to_csv", [](const SelectionReport& r, std::uint64_t seed) {
             return report_to_csv(r, seed);
           },
           py::arg("seed") = 0);

  py::class_<PamResult>(m, "PamResult")
      .def_readonly("labels", &PamResult::labels)
      .def_readonly("chosen_k", &PamResult::chosen_k)
      .def_readonly("degenerate", &PamResult::degenerate);

  py::class_<ElbowResult>(m, "ElbowResult")
      .def_readonly("labels", &ElbowResult::labels)
      .def_readonly("chosen_rank", &ElbowResult::chosen_rank);

  // core
  m.def("validate_count_matrix", &validate_count_matrix, py::arg("raw"));
  m.def("empirical_probabilities",
        [](const CountMatrix& x) { return empirical_probabilities(x).values(); }, py::arg("x"));
  m.def("read_count_csv", &read_count_csv_file, py::arg("path"), py::arg("header") = false);

  // lowrank
  m.def("reduced_rank_projection", &reduced_rank_projection, py::arg("m"), py::arg("k"));
  m.def("clip_negatives", &clip_negatives, py::arg("m"));
  m.def("normalize_columns",
        [](const Mat& m) { return normalize_columns(m).values(); }, py::arg("m"));
  m.def("truncate_counts", &truncate_counts, py::arg("x"), py::arg("cap"));
  m.def("projection_mse", &projection_mse, py::arg("estimate"), py::arg("truth"));

  // factorize
  m.def("nmf", &nmf, py::arg("p"), py::arg("k"), py::arg("params") = NmfParams{});
  m.def("map_assign", &map_assign, py::arg("factors"), py::arg("seed") = 1);
  m.def("preliminary_estimate", &preliminary_estimate, py::arg("x"), py::arg("k"),
        py::arg("params") = NmfParams{});

  // mlqe
  m.def("cluster_counts", &cluster_counts, py::arg("x"), py::arg("labels"), py::arg("k"));
  m.def("closed_form_prototypes",
        [](const MatI& counts, double q) { return closed_form_prototypes(counts, q).values(); },
        py::arg("m"), py::arg("q") = 1.0);
  m.def("profile_objective", &profile_objective, py::arg("m"), py::arg("q") = 1.0);
  m.def("refine_labels", &refine_labels, py::arg("x"), py::arg("init"),
        py::arg("params") = SearchParams{});

  // selection
  m.def("discrepancy",
        [](const CountMatrix& x, const ClusterModel& model) { return discrepancy(x, model); },
        py::arg("x"), py::arg("model"));
  m.def("penalty", &penalty, py::arg("model"), py::arg("x"),
        py::arg("params") = CriterionParams{});
  m.def("conventional_penalty",
        [](const std::string& kind, int k, int d, std::int64_t n) {
          return conventional_penalty(kind == "BIC" ? ConventionalKind::BIC
                                                    : ConventionalKind::AIC,
                                      k, d, n);
        },
        py::arg("kind"), py::arg("k"), py::arg("d"), py::arg("n_total"));
  m.def("delta", &delta, py::arg("x"), py::arg("model"), py::arg("params") = CriterionParams{});
  m.def("sweep", &sweep, py::arg("x"), py::arg("k_min"), py::arg("k_max"),
        py::arg("criterion") = CriterionParams{}, py::arg("nmf_params") = NmfParams{},
        py::arg("search") = SearchParams{}, py::arg("refine") = true);
  m.def("merge_last_two", &merge_last_two, py::arg("truth"), py::arg("trial_counts"));
  m.def("split_last", &split_last, py::arg("truth"), py::arg("split_assignment"));

  // metrics
  m.def("adjusted_rand_index", &adjusted_rand_index, py::arg("a"), py::arg("b"));
  m.def("kl_divergence", &kl_divergence, py::arg("p"), py::arg("q"));
  m.def("entropy", &entropy, py::arg("p"));
  m.def("weighted_discrepancy_phi",
        [](const Mat& p_eval, const Mat& x_expected, const VecI& trials,
           const std::vector<int>& labels, int k) {
          return weighted_discrepancy_phi(ProbabilityMatrix(p_eval), x_expected, trials, labels, k);
        },
        py::arg("p_eval"), py::arg("x_expected"), py::arg("trial_counts"),
        py::arg("true_labels"), py::arg("k_true"));
  m.def("theorem1_limit_constant", &theorem1_limit_constant, py::arg("z_bars"),
        py::arg("n_bars"), py::arg("lambda_bars"));

  // datagen
  m.def("two_cluster_sparse",
        [](int d, std::int64_t n, std::uint64_t seed) {
          PlantedData out = two_cluster_sparse(d, n, seed);
          return py::make_tuple(out.x, out.truth);
        },
        py::arg("d"), py::arg("n_trials"), py::arg("seed") = 1);
  m.def("swimmer_matrix", &swimmer_matrix);
  m.def("swimmer_exact_factorization", &swimmer_exact_factorization);
  m.def("planted_multinomial", &planted_multinomial, py::arg("model"), py::arg("trial_counts"),
        py::arg("seed") = 1);
  m.def("sbm_graphs",
        [](int n, int copies, std::uint64_t seed) {
          SbmData data = sbm_graphs(two_pattern_sbm_specs(n), copies, seed);
          return py::make_tuple(data.x, data.true_labels);
        },
        py::arg("n"), py::arg("copies_per_spec") = 3, py::arg("seed") = 1);

  // baselines
  m.def("pam_silhouette", &pam_silhouette, py::arg("x"), py::arg("k_min"), py::arg("k_max"));
  m.def("elbow_kmeans", &elbow_kmeans, py::arg("x"), py::arg("k_max"), py::arg("seed") = 1);
}
