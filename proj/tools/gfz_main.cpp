// gfz: dual-route graph filters on the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gfz/approx.hpp"
#include "gfz/bench.hpp"
#include "gfz/csv.hpp"
#include "gfz/diagnostics.hpp"
#include "gfz/error.hpp"
#include "gfz/operators.hpp"
#include "gfz/sampler.hpp"
#include "gfz/spectral.hpp"
#include "gfz/synth.hpp"

namespace {

using nlohmann::json;

int spectral_cap_from_env() {
  const char* cap = std::getenv("GFZ_SPECTRAL_CAP");
  if (!cap) return gfz::kDefaultSpectralCap;
  try {
    return std::max(1, std::stoi(cap));
  } catch (const std::exception&) {
    throw gfz::Error(gfz::ErrorCode::Parameter, "GFZ_SPECTRAL_CAP must be an integer");
  }
}

std::vector<double> parse_number_list(const std::string& text, char sep) {
  std::vector<double> out;
  std::string token;
  std::istringstream ss(text);
  while (std::getline(ss, token, sep)) {
    if (token.empty()) continue;
    out.push_back(std::stod(token));
  }
  return out;
}

/// `name[:key=value,key=v1|v2,...]`, e.g. `ppnp:alpha=0.2` or
/// `chebnet:theta=1|-1`.
gfz::OperatorSpec parse_operator(const std::string& text) {
  auto colon = text.find(':');
  std::string name = text.substr(0, colon);
  gfz::OpParams params;
  if (colon != std::string::npos) {
    std::string rest = text.substr(colon + 1);
    std::istringstream ss(rest);
    std::string assign;
    while (std::getline(ss, assign, ',')) {
      auto eq = assign.find('=');
      if (eq == std::string::npos)
        throw gfz::Error(gfz::ErrorCode::Parameter, "operator parameter needs key=value: " + assign);
      try {
        params[assign.substr(0, eq)] = parse_number_list(assign.substr(eq + 1), '|');
      } catch (const std::exception&) {
        throw gfz::Error(gfz::ErrorCode::Parameter, "bad operator parameter value: " + assign);
      }
    }
  }
  return gfz::make_operator(name, params);
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw gfz::Error(gfz::ErrorCode::Io, "cannot write " + out_path);
  out << content;
}

gfz::FeatureMatrix features_or_random(const std::string& features_path, const gfz::Graph& g,
                                      int f, uint64_t seed) {
  if (!features_path.empty()) {
    gfz::FeatureMatrix x = gfz::read_feature_csv(features_path);
    if (x.rows() != g.n)
      throw gfz::Error(gfz::ErrorCode::DimensionMismatch,
                       "feature rows do not match the graph's node count");
    return x;
  }
  return gfz::random_features(g.n, f, seed);
}

struct CommonArgs {
  std::string graph_path;
  std::string features_path;
  std::string out_path;
  uint64_t seed = 42;
};

int run(int argc, char** argv) {
  CLI::App app{"gfz: spatial/spectral graph filters, approximation studies, and diagnostics"};
  app.require_subcommand(1);
  int cap = spectral_cap_from_env();

  // list
  CLI::App* list_cmd = app.add_subcommand("list", "print the operator catalog");

  // apply
  CLI::App* apply_cmd = app.add_subcommand("apply", "apply one filter to a feature matrix");
  CommonArgs apply_args;
  std::string op_text, route = "spatial", norm_override;
  apply_cmd->add_option("--graph", apply_args.graph_path, "edge list file")->required();
  apply_cmd->add_option("--features", apply_args.features_path, "feature csv")->required();
  apply_cmd->add_option("--op", op_text, "operator, e.g. ppnp:alpha=0.2")->required();
  apply_cmd->add_option("--route", route, "spatial|spectral")
      ->check(CLI::IsMember({"spatial", "spectral"}));
  apply_cmd->add_option("--norm", norm_override, "override the operator's normalization kind");
  apply_cmd->add_option("--out", apply_args.out_path, "output csv (default stdout)");

  // verify
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "check spatial vs spectral agreement for the whole catalog");
  CommonArgs verify_args;
  double tol = 1e-8;
  int verify_f = 8;
  verify_cmd->add_option("--graph", verify_args.graph_path, "edge list file")->required();
  verify_cmd->add_option("--features", verify_args.features_path,
                         "feature csv (default: seeded random)");
  verify_cmd->add_option("--tol", tol, "relative tolerance")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--seed", verify_args.seed, "seed for generated features");
  verify_cmd->add_option("--out", verify_args.out_path, "output json (default stdout)");

  // approx
  CLI::App* approx_cmd =
      app.add_subcommand("approx", "fit a target response with polynomial/rational approximants");
  std::string target_name = "sign", domain_text, budgets_text, rational_text;
  int poly_degree = -1, samples = 2000;
  std::string approx_out;
  approx_cmd->add_option("--target", target_name, "sign|abs|sqrt|bump|clipsine")->required();
  approx_cmd->add_option("--domain", domain_text, "lo,hi (default: sign -1,1; others 0,1)");
  approx_cmd->add_option("--samples", samples, "grid size");
  approx_cmd->add_option("--poly", poly_degree, "polynomial degree to fit");
  approx_cmd->add_option("--rational", rational_text, "m,n rational degrees to fit");
  approx_cmd->add_option("--budgets", budgets_text, "comma list of budgets for a sweep");
  approx_cmd->add_option("--out", approx_out, "output csv (default stdout)");

  // oversmooth
  CLI::App* smooth_cmd =
      app.add_subcommand("oversmooth", "trace collapse metrics under repeated filtering");
  CommonArgs smooth_args;
  std::string smooth_op = "sgc", smooth_norm;
  int k_steps = 200;
  int smooth_f = 4;
  smooth_cmd->add_option("--graph", smooth_args.graph_path, "edge list file")->required();
  smooth_cmd->add_option("--features", smooth_args.features_path,
                         "feature csv (default: seeded random)");
  smooth_cmd->add_option("--op", smooth_op, "operator to iterate");
  smooth_cmd->add_option("--norm", smooth_norm, "normalization kind override");
  smooth_cmd->add_option("--k", k_steps, "number of applications")->check(CLI::PositiveNumber);
  smooth_cmd->add_option("--seed", smooth_args.seed, "seed for generated features");
  smooth_cmd->add_option("--out", smooth_args.out_path, "output csv (default stdout)");

  // bench
  CLI::App* bench_cmd = app.add_subcommand("bench", "time filter families on synthetic graphs");
  std::string families_text = "linear,polynomial,rational", sizes_text = "500,1000,2000";
  gfz::BenchConfig bench_cfg;
  std::string bench_out;
  bench_cmd->add_option("--families", families_text, "comma list: linear,polynomial,rational");
  bench_cmd->add_option("--sizes", sizes_text, "comma list of node counts");
  bench_cmd->add_option("--k", bench_cfg.k, "polynomial order");
  bench_cmd->add_option("--reps", bench_cfg.reps, "repetitions per point");
  bench_cmd->add_option("--seed", bench_cfg.seed, "workload seed");
  bench_cmd->add_option("--out", bench_out, "output csv (default stdout)");

  // sample
  CLI::App* sample_cmd = app.add_subcommand("sample", "draw random walks and write the corpus");
  CommonArgs sample_args;
  int walks_per_node = 10, walk_len = 10;
  double p2 = 0.0, q2 = 0.0;
  sample_cmd->add_option("--graph", sample_args.graph_path, "edge list file")->required();
  sample_cmd->add_option("--walks", walks_per_node, "walks per start node")
      ->check(CLI::PositiveNumber);
  sample_cmd->add_option("--len", walk_len, "nodes per walk")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample_args.seed, "corpus seed");
  sample_cmd->add_option("--p", p2, "second-order return parameter (with --q)");
  sample_cmd->add_option("--q", q2, "second-order exploration parameter (with --p)");
  sample_cmd->add_option("--out", sample_args.out_path, "corpus file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (list_cmd->parsed()) {
    std::cout << gfz::format_catalog(gfz::default_registry());
    return 0;
  }

  if (apply_cmd->parsed()) {
    gfz::Graph g = gfz::load_edge_list(apply_args.graph_path);
    gfz::FeatureMatrix x = gfz::read_feature_csv(apply_args.features_path);
    gfz::OperatorSpec spec = parse_operator(op_text);
    if (!norm_override.empty())
      spec = gfz::with_norm(spec, gfz::norm_kind_from_name(norm_override));
    gfz::FeatureMatrix z;
    if (route == "spatial") {
      z = gfz::apply_spatial(spec, g, x);
    } else {
      gfz::SpectralBasis basis =
          gfz::eigendecompose(gfz::normalize(g, gfz::laplacian_of(spec.norm_kind)), cap);
      z = gfz::apply_spectral(spec, basis, x);
    }
    emit(apply_args.out_path, gfz::matrix_to_csv(z));
    return 0;
  }

  if (verify_cmd->parsed()) {
    gfz::Graph g = gfz::load_edge_list(verify_args.graph_path);
    gfz::FeatureMatrix x = features_or_random(verify_args.features_path, g, verify_f,
                                              verify_args.seed);
    json reports = json::array();
    bool all_pass = true;
    for (const gfz::OperatorSpec& spec : gfz::default_registry()) {
      gfz::EquivalenceReport report = gfz::verify_equivalence(spec, g, x, tol, cap);
      all_pass = all_pass && report.pass;
      reports.push_back({{"name", report.name},
                         {"max_err", report.max_err},
                         {"mean_err", report.mean_err},
                         {"pass", report.pass}});
    }
    json doc = {{"metadata",
                 {{"graph", verify_args.graph_path},
                  {"n", g.n},
                  {"edges", g.edges.size()},
                  {"bipartite", gfz::is_bipartite(g)},
                  {"tol", tol}}},
                {"reports", reports}};
    emit(verify_args.out_path, doc.dump(2) + "\n");
    return all_pass ? 0 : 1;
  }

  if (approx_cmd->parsed()) {
    gfz::TargetKind kind = gfz::target_kind_from_name(target_name);
    double lo = kind == gfz::TargetKind::SignStep ? -1.0 : 0.0;
    double hi = 1.0;
    if (!domain_text.empty()) {
      std::vector<double> d = parse_number_list(domain_text, ',');
      if (d.size() != 2) throw gfz::Error(gfz::ErrorCode::Parameter, "--domain needs lo,hi");
      lo = d[0];
      hi = d[1];
    }
    gfz::TargetResponse target = gfz::TargetResponse::make(kind, lo, hi, samples);
    std::ostringstream out;
    if (!budgets_text.empty()) {
      std::vector<int> budgets;
      for (double b : parse_number_list(budgets_text, ',')) budgets.push_back(static_cast<int>(b));
      out << gfz::curve_to_csv(gfz::convergence_curve(target, budgets));
    } else {
      out << "fitter,degree,max_error,max_error_windowed,iterations\n";
      char buf[160];
      if (poly_degree >= 0) {
        gfz::FitResult fit = gfz::poly_fit(target, poly_degree);
        std::snprintf(buf, sizeof(buf), "poly,%d,%.12g,%.12g,%d\n", poly_degree, fit.max_error,
                      fit.max_error_windowed, fit.iterations);
        out << buf;
      }
      if (!rational_text.empty()) {
        std::vector<double> mn = parse_number_list(rational_text, ',');
        if (mn.size() != 2) throw gfz::Error(gfz::ErrorCode::Parameter, "--rational needs m,n");
        gfz::FitResult fit = gfz::rational_fit(target, static_cast<int>(mn[0]),
                                               static_cast<int>(mn[1]));
        std::snprintf(buf, sizeof(buf), "rational,\"%d,%d\",%.12g,%.12g,%d\n",
                      static_cast<int>(mn[0]), static_cast<int>(mn[1]), fit.max_error,
                      fit.max_error_windowed, fit.iterations);
        out << buf;
      }
      if (poly_degree < 0 && rational_text.empty())
        throw gfz::Error(gfz::ErrorCode::Parameter,
                         "approx needs --poly, --rational, or --budgets");
    }
    emit(approx_out, out.str());
    return 0;
  }

  if (smooth_cmd->parsed()) {
    gfz::Graph g = gfz::load_edge_list(smooth_args.graph_path);
    gfz::FeatureMatrix x = features_or_random(smooth_args.features_path, g, smooth_f,
                                              smooth_args.seed);
    gfz::OperatorSpec spec = parse_operator(smooth_op);
    if (!smooth_norm.empty()) spec = gfz::with_norm(spec, gfz::norm_kind_from_name(smooth_norm));
    auto steps = gfz::smoothing_trajectory(spec, g, x, k_steps);
    emit(smooth_args.out_path, gfz::trajectory_to_csv(steps));
    return 0;
  }

  if (bench_cmd->parsed()) {
    bench_cfg.families.clear();
    std::istringstream fs(families_text);
    std::string fam;
    while (std::getline(fs, fam, ',')) {
      if (fam == "linear") bench_cfg.families.push_back(gfz::Family::Linear);
      else if (fam == "polynomial") bench_cfg.families.push_back(gfz::Family::Polynomial);
      else if (fam == "rational") bench_cfg.families.push_back(gfz::Family::Rational);
      else throw gfz::Error(gfz::ErrorCode::Parameter, "unknown family: " + fam);
    }
    bench_cfg.sizes.clear();
    for (double s : parse_number_list(sizes_text, ',')) bench_cfg.sizes.push_back(static_cast<int>(s));
    gfz::BenchResult result = gfz::run_bench(bench_cfg);
    if (!result.log.empty()) std::cerr << result.log;
    emit(bench_out, gfz::bench_to_csv(result.records));
    return 0;
  }

  if (sample_cmd->parsed()) {
    gfz::Graph g = gfz::load_edge_list(sample_args.graph_path);
    if ((p2 > 0.0) != (q2 > 0.0))
      throw gfz::Error(gfz::ErrorCode::Parameter, "--p and --q must be given together");
    gfz::WalkCorpus corpus =
        p2 > 0.0 ? gfz::sample_walks_2nd(g, p2, q2, walk_len, walks_per_node, sample_args.seed)
                 : gfz::sample_walks(g, walk_len, walks_per_node, sample_args.seed);
    emit(sample_args.out_path, gfz::corpus_to_string(corpus));
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const gfz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
