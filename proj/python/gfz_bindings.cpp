#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gfz/approx.hpp"
#include "gfz/bench.hpp"
#include "gfz/csv.hpp"
#include "gfz/diagnostics.hpp"
#include "gfz/error.hpp"
#include "gfz/operators.hpp"
#include "gfz/sampler.hpp"
#include "gfz/spectral.hpp"
#include "gfz/synth.hpp"

namespace py = pybind11;
using namespace gfz;

namespace {

NormKind kind_arg(const std::string& name) { return norm_kind_from_name(name); }

Graph graph_from_edges(const std::vector<std::tuple<int, int, double>>& edges, int n) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [u, v, w] : edges) list.push_back({u, v, w});
  return Graph::from_edge_list(list, n);
}

}  // namespace

PYBIND11_MODULE(_gfz, m) {
  m.doc() = "dual-route graph filters: spatial closed forms and spectral responses";

  py::register_exception<Error>(m, "GfzError");

  py::class_<Graph>(m, "Graph")
      .def(py::init(&graph_from_edges), py::arg("edges"), py::arg("n") = -1)
      .def_readonly("n", &Graph::n)
      .def_property_readonly("degrees", [](const Graph& g) { return g.degrees; })
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               std::vector<std::tuple<int, int, double>> out;
                               for (const Edge& e : g.edges) out.emplace_back(e.u, e.v, e.w);
                               return out;
                             })
      .def("content_hash", &graph_content_hash)
      .def("__repr__", [](const Graph& g) {
        return "Graph(n=" + std::to_string(g.n) + ", edges=" + std::to_string(g.edges.size()) +
               ")";
      });

  m.def("load_edge_list", &load_edge_list, py::arg("path"));
  m.def("save_edge_list", &save_edge_list, py::arg("path"), py::arg("graph"));

  py::class_<NormalizedMatrix>(m, "NormalizedMatrix")
      .def_property_readonly("kind",
                             [](const NormalizedMatrix& m_) {
                               return std::string(norm_kind_name(m_.kind));
                             })
      .def_property_readonly("n", &NormalizedMatrix::n)
      .def("dense", [](const NormalizedMatrix& m_) { return Eigen::MatrixXd(m_.values); });

  m.def(
      "normalize",
      [](const Graph& g, const std::string& kind, const std::string& zero_degree) {
        ZeroDegreePolicy policy = zero_degree == "zero-row" ? ZeroDegreePolicy::ZeroRow
                                                            : ZeroDegreePolicy::Strict;
        return normalize(g, kind_arg(kind), policy);
      },
      py::arg("graph"), py::arg("kind"), py::arg("zero_degree") = "strict");
  m.def("matrix_power_apply", &matrix_power_apply, py::arg("m"), py::arg("k"), py::arg("x"));

  py::class_<SpectralBasis>(m, "SpectralBasis")
      .def_property_readonly("lambdas", [](const SpectralBasis& b) { return b.lambdas; })
      .def_property_readonly("U", [](const SpectralBasis& b) { return b.U; })
      .def_property_readonly("kind",
                             [](const SpectralBasis& b) {
                               return std::string(norm_kind_name(b.source_kind));
                             })
      .def_property_readonly("n", &SpectralBasis::n);

  m.def("eigendecompose", &eigendecompose, py::arg("m"), py::arg("cap") = kDefaultSpectralCap);
  m.def("gft", &gft, py::arg("basis"), py::arg("x"));
  m.def("inverse_gft", &inverse_gft, py::arg("basis"), py::arg("xhat"));
  m.def("apply_response", &apply_response, py::arg("basis"), py::arg("g"), py::arg("x"),
        py::arg("keep_lowest") = -1);
  m.def("save_basis", &save_basis, py::arg("path"), py::arg("basis"));
  m.def(
      "load_basis",
      [](const std::string& path, const std::string& kind) {
        return load_basis(path, kind_arg(kind));
      },
      py::arg("path"), py::arg("kind"));
  m.def(
      "basis_cache_key",
      [](const Graph& g, const std::string& kind) { return basis_cache_key(g, kind_arg(kind)); },
      py::arg("graph"), py::arg("kind"));

  py::class_<OperatorSpec>(m, "OperatorSpec")
      .def_readonly("name", &OperatorSpec::name)
      .def_property_readonly("norm_kind",
                             [](const OperatorSpec& s) {
                               return std::string(norm_kind_name(s.norm_kind));
                             })
      .def_readonly("p_coeffs", &OperatorSpec::p_coeffs)
      .def_readonly("q_coeffs", &OperatorSpec::q_coeffs)
      .def_property_readonly("family",
                             [](const OperatorSpec& s) {
                               return std::string(family_name(s.family));
                             })
      .def("response", &OperatorSpec::response, py::arg("lam"))
      .def("__repr__", [](const OperatorSpec& s) { return "OperatorSpec(" + s.name + ")"; });

  m.def("gcn", &op::gcn);
  m.def("gcn_renorm", &op::gcn_renorm);
  m.def("sage_mean", &op::sage_mean);
  m.def("gin", &op::gin, py::arg("eps"));
  m.def("chebnet", &op::chebnet, py::arg("theta"), py::arg("lambda_max") = 2.0);
  m.def("deepwalk", &op::deepwalk, py::arg("t"));
  m.def("dcnn", &op::dcnn, py::arg("w"));
  m.def("gdc_ppr", &op::gdc_ppr, py::arg("alpha"));
  m.def("gdc_heat", &op::gdc_heat, py::arg("s"));
  m.def("node2vec", &op::node2vec, py::arg("p"), py::arg("q"));
  m.def("line_sdne", &op::line_sdne, py::arg("alpha"));
  m.def("sgc", &op::sgc, py::arg("k"));
  m.def("auto_regressive", &op::auto_regressive, py::arg("alpha"));
  m.def("ppnp", &op::ppnp, py::arg("alpha"));
  m.def("arma", &op::arma, py::arg("a"), py::arg("b"));
  m.def("parwalks", &op::parwalks, py::arg("beta"));
  m.def("rationalnet", &op::rationalnet, py::arg("p"), py::arg("q"));
  m.def(
      "propagation", [](const std::string& kind) { return op::propagation(kind_arg(kind)); },
      py::arg("kind"));
  m.def(
      "with_norm",
      [](const OperatorSpec& s, const std::string& kind) { return with_norm(s, kind_arg(kind)); },
      py::arg("spec"), py::arg("kind"));
  m.def("as_polynomial", &as_polynomial, py::arg("spec"));
  m.def("as_rational", &as_rational, py::arg("spec"));
  m.def("power_spec", &power_spec, py::arg("spec"), py::arg("k"));
  m.def("make_operator", &make_operator, py::arg("name"), py::arg("params") = OpParams{});
  m.def("default_registry", &default_registry);
  m.def("format_catalog", &format_catalog, py::arg("specs"));

  m.def(
      "apply_spatial",
      [](const OperatorSpec& spec, const Graph& g, const FeatureMatrix& x) {
        return apply_spatial(spec, g, x);
      },
      py::arg("spec"), py::arg("graph"), py::arg("x"));
  m.def("apply_spectral", &apply_spectral, py::arg("spec"), py::arg("basis"), py::arg("x"));
  m.def("masked_aggregate", &masked_aggregate, py::arg("weights"), py::arg("graph"), py::arg("x"));

  py::class_<EquivalenceReport>(m, "EquivalenceReport")
      .def_readonly("name", &EquivalenceReport::name)
      .def_readonly("max_err", &EquivalenceReport::max_err)
      .def_readonly("mean_err", &EquivalenceReport::mean_err)
      .def_readonly("pass_", &EquivalenceReport::pass)
      .def("__repr__", [](const EquivalenceReport& r) {
        return "EquivalenceReport(" + r.name + (r.pass ? ", pass" : ", FAIL") + ")";
      });
  m.def(
      "verify_equivalence",
      [](const OperatorSpec& spec, const Graph& g, const FeatureMatrix& x, double tol, int cap) {
        return verify_equivalence(spec, g, x, tol, cap);
      },
      py::arg("spec"), py::arg("graph"), py::arg("x"), py::arg("tol") = 1e-8,
      py::arg("cap") = kDefaultSpectralCap);

  py::class_<TargetResponse>(m, "TargetResponse")
      .def_static(
          "make",
          [](const std::string& kind, double lo, double hi, int samples) {
            return TargetResponse::make(target_kind_from_name(kind), lo, hi, samples);
          },
          py::arg("kind"), py::arg("lo"), py::arg("hi"), py::arg("samples") = 2000)
      .def_static("tabulated", &TargetResponse::tabulated, py::arg("xs"), py::arg("fs"))
      .def_readonly("lo", &TargetResponse::lo)
      .def_readonly("hi", &TargetResponse::hi)
      .def_readonly("xs", &TargetResponse::xs)
      .def_readonly("fs", &TargetResponse::fs)
      .def("eval", &TargetResponse::eval, py::arg("x"));

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("num", &FitResult::num)
      .def_readonly("den", &FitResult::den)
      .def_readonly("max_error", &FitResult::max_error)
      .def_readonly("max_error_windowed", &FitResult::max_error_windowed)
      .def_readonly("iterations", &FitResult::iterations);

  m.def("poly_fit", &poly_fit, py::arg("target"), py::arg("degree"));
  m.def("chebyshev_fit", &chebyshev_fit, py::arg("target"), py::arg("degree"));
  m.def("rational_fit", &rational_fit, py::arg("target"), py::arg("num_degree"),
        py::arg("den_degree"));
  m.def("eval_fit", &eval_fit, py::arg("fit"), py::arg("x"));

  py::class_<CurveRow>(m, "CurveRow")
      .def_readonly("budget", &CurveRow::budget)
      .def_readonly("poly_error", &CurveRow::poly_error)
      .def_readonly("rational_error", &CurveRow::rational_error)
      .def_readonly("poly_ok", &CurveRow::poly_ok)
      .def_readonly("rational_ok", &CurveRow::rational_ok);
  m.def("convergence_curve", &convergence_curve, py::arg("target"), py::arg("budgets"));
  m.def("fit_line", &fit_line, py::arg("xs"), py::arg("ys"));

  m.def("lowpass_profile", &lowpass_profile, py::arg("lambdas"), py::arg("bias"));
  m.def("dirichlet_energy", &dirichlet_energy, py::arg("laplacian"), py::arg("z"));
  py::class_<TrajectoryStep>(m, "TrajectoryStep")
      .def_readonly("k", &TrajectoryStep::k)
      .def_readonly("max_row_dist", &TrajectoryStep::max_row_dist)
      .def_readonly("dirichlet", &TrajectoryStep::dirichlet)
      .def_readonly("stationary_dist", &TrajectoryStep::stationary_dist);
  m.def("smoothing_trajectory", &smoothing_trajectory, py::arg("spec"), py::arg("graph"),
        py::arg("x"), py::arg("k_max"));
  m.def("analytic_label_prop", &analytic_label_prop, py::arg("laplacian"), py::arg("y"),
        py::arg("alpha"));
  m.def("is_bipartite", &is_bipartite, py::arg("graph"));

  py::class_<WalkCorpus>(m, "WalkCorpus")
      .def_readonly("n", &WalkCorpus::n)
      .def_readonly("walks", &WalkCorpus::walks)
      .def("total_steps", &WalkCorpus::total_steps);
  m.def("sample_walks", &sample_walks, py::arg("graph"), py::arg("length"), py::arg("per_node"),
        py::arg("seed"));
  m.def("sample_walks_2nd", &sample_walks_2nd, py::arg("graph"), py::arg("p"), py::arg("q"),
        py::arg("length"), py::arg("per_node"), py::arg("seed"));
  m.def(
      "empirical_transition",
      [](const WalkCorpus& corpus) {
        TransitionEstimate est = empirical_transition(corpus);
        return py::make_tuple(est.probs, est.visited);
      },
      py::arg("corpus"));
  m.def(
      "co_occurrence",
      [](const WalkCorpus& corpus, int window) {
        TransitionEstimate est = co_occurrence(corpus, window);
        return py::make_tuple(est.probs, est.visited);
      },
      py::arg("corpus"), py::arg("window"));
  m.def("total_variation", &total_variation, py::arg("a"), py::arg("b"));
  m.def("corpus_to_string", &corpus_to_string, py::arg("corpus"));
  m.def("write_corpus", &write_corpus, py::arg("path"), py::arg("corpus"));

  m.def("path_graph", &path_graph, py::arg("n"));
  m.def("cycle_graph", &cycle_graph, py::arg("n"));
  m.def("complete_graph", &complete_graph, py::arg("n"));
  m.def("star_graph", &star_graph, py::arg("leaves"));
  m.def("erdos_renyi", &erdos_renyi, py::arg("n"), py::arg("p"), py::arg("seed"));
  m.def("random_connected_graph", &random_connected_graph, py::arg("n"), py::arg("avg_degree"),
        py::arg("seed"), py::arg("ensure_odd_cycle") = false);
  m.def("random_features", &random_features, py::arg("n"), py::arg("f"), py::arg("seed"));

  m.def("read_feature_csv", &read_feature_csv, py::arg("path"));
  m.def("write_matrix_csv", &write_matrix_csv, py::arg("path"), py::arg("m"));
}
