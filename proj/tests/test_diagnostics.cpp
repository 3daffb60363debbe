#include <cmath>

#include "doctest.h"
#include "gfz/diagnostics.hpp"
#include "gfz/spectral.hpp"
#include "gfz/synth.hpp"
#include "helpers.hpp"

using namespace gfz;

TEST_CASE("lowpass_profile") {
  SUBCASE("bias 2 over {0,1,2}") {
    Eigen::VectorXd lambdas(3);
    lambdas << 0.0, 1.0, 2.0;
    Eigen::VectorXd w = lowpass_profile(lambdas, 2.0);
    CHECK(w[0] == doctest::Approx(2.0 / 3));
    CHECK(w[1] == doctest::Approx(1.0 / 3));
    CHECK(w[2] == doctest::Approx(0.0));
  }
  SUBCASE("symmetric spectrum around the bias splits evenly") {
    Eigen::VectorXd lambdas(2);
    lambdas << 0.0, 2.0;
    Eigen::VectorXd w = lowpass_profile(lambdas, 1.0);
    CHECK(w[0] == doctest::Approx(0.5));
    CHECK(w[1] == doctest::Approx(0.5));
  }
  SUBCASE("huge bias flattens to uniform") {
    Eigen::VectorXd lambdas(5);
    lambdas << 0.0, 0.3, 0.9, 1.4, 2.0;
    Eigen::VectorXd w = lowpass_profile(lambdas, 1e9);
    CHECK((w.array() - 0.2).abs().maxCoeff() <= 1e-6);
  }
  SUBCASE("degenerate when every eigenvalue equals the bias") {
    Eigen::VectorXd lambdas = Eigen::VectorXd::Constant(3, 1.0);
    CHECK_GFZ_ERROR(lowpass_profile(lambdas, 1.0), ErrorCode::DegenerateInput);
  }
  SUBCASE("probability vector with the displayed affine slope") {
    Graph g = random_connected_graph(20, 4.0, 3);
    SpectralBasis basis = eigendecompose(normalize(g, NormKind::SymLaplacian));
    double bias = 2.5;
    Eigen::VectorXd w = lowpass_profile(basis.lambdas, bias);
    CHECK(w.minCoeff() >= 0.0);
    CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-12));
    // For bias >= max lambda: w_i = slope * lambda_i + intercept with
    // slope -1 / (N bias - sum lambda).
    double slope = -1.0 / (g.n * bias - basis.lambdas.sum());
    CHECK(slope < 0.0);
    for (int i = 0; i < g.n; ++i) {
      double affine = slope * basis.lambdas[i] + bias / (g.n * bias - basis.lambdas.sum());
      CHECK(w[i] == doctest::Approx(affine).epsilon(1e-10));
    }
  }
}

TEST_CASE("dirichlet_energy") {
  SUBCASE("constants are flat for the combinatorial Laplacian") {
    Graph g = random_connected_graph(15, 4.0, 5);
    FeatureMatrix z = FeatureMatrix::Ones(g.n, 2);
    CHECK(std::abs(dirichlet_energy(normalize(g, NormKind::Laplacian), z)) <= 1e-10);
  }
  SUBCASE("sqrt-degree vector is flat for the normalized Laplacian") {
    Graph g = random_connected_graph(15, 4.0, 6);
    FeatureMatrix z = g.degrees.cwiseSqrt();
    CHECK(std::abs(dirichlet_energy(normalize(g, NormKind::SymLaplacian), z)) <= 1e-10);
  }
  SUBCASE("eigenvectors yield their eigenvalue") {
    Graph g = random_connected_graph(12, 3.0, 7);
    NormalizedMatrix lap = normalize(g, NormKind::SymLaplacian);
    SpectralBasis basis = eigendecompose(lap);
    for (int i : {1, 3, 5})
      CHECK(dirichlet_energy(lap, basis.U.col(i)) == doctest::Approx(basis.lambdas[i]));
  }
  SUBCASE("edge-sum oracle on K2 and a random graph") {
    Graph k2 = oracle::k2();
    FeatureMatrix z = random_features(2, 1, 9);
    double want = (z(0, 0) - z(1, 0)) * (z(0, 0) - z(1, 0));  // degrees are 1
    CHECK(dirichlet_energy(normalize(k2, NormKind::SymLaplacian), z) == doctest::Approx(want));

    Graph g = random_connected_graph(14, 4.0, 8);
    FeatureMatrix y = random_features(g.n, 3, 10);
    double total = 0.0;
    for (const Edge& e : g.edges) {
      Eigen::RowVectorXd diff = y.row(e.u) / std::sqrt(g.degrees[e.u]) -
                                y.row(e.v) / std::sqrt(g.degrees[e.v]);
      total += e.w * diff.squaredNorm();
    }
    CHECK(dirichlet_energy(normalize(g, NormKind::SymLaplacian), y) ==
          doctest::Approx(total).epsilon(1e-10));
  }
  SUBCASE("non-Laplacian kinds are refused") {
    Graph g = oracle::p3();
    CHECK_GFZ_ERROR(dirichlet_energy(normalize(g, NormKind::Sym), FeatureMatrix::Ones(3, 1)),
                    ErrorCode::KindMismatch);
  }
}

TEST_CASE("smoothing_trajectory") {
  SUBCASE("random-walk powers collapse on a non-bipartite graph") {
    Graph g = random_connected_graph(20, 4.0, 12, /*ensure_odd_cycle=*/true);
    REQUIRE(!is_bipartite(g));
    FeatureMatrix x = random_features(g.n, 3, 13);
    auto steps = smoothing_trajectory(op::propagation(NormKind::RwLeft), g, x, 200);
    REQUIRE(steps.size() == 200);
    CHECK(steps.back().max_row_dist <= 1e-6);
    CHECK(steps.back().stationary_dist <= 1e-6);
  }
  SUBCASE("one step equals one application") {
    Graph g = random_connected_graph(12, 3.0, 14);
    FeatureMatrix x = random_features(g.n, 2, 15);
    auto steps = smoothing_trajectory(op::gcn_renorm(), g, x, 1);
    REQUIRE(steps.size() == 1);
    FeatureMatrix z = apply_spatial(op::gcn_renorm(), g, x);
    NormalizedMatrix lap = normalize(g, NormKind::RenormSymLaplacian);
    CHECK(steps[0].dirichlet == doctest::Approx(dirichlet_energy(lap, z)));
  }
  SUBCASE("overflow reports the failing step") {
    Graph g = oracle::k2();
    FeatureMatrix x(2, 1);
    x << 1e300, -1e300;
    OperatorSpec blowup = op::gin(1e9);
    try {
      smoothing_trajectory(blowup, g, x, 10);
      FAIL("expected overflow");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Numeric);
      CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
  }
  SUBCASE("rational filters can be iterated too") {
    Graph g = random_connected_graph(10, 3.0, 15);
    FeatureMatrix x = random_features(g.n, 2, 16);
    auto steps = smoothing_trajectory(op::ppnp(0.5), g, x, 3);
    REQUIRE(steps.size() == 3);
    for (const TrajectoryStep& s : steps) {
      CHECK(std::isfinite(s.max_row_dist));
      CHECK(s.dirichlet >= -1e-9);
    }
  }
  SUBCASE("k applications match the expanded polynomial") {
    Graph g = random_connected_graph(14, 4.0, 16);
    FeatureMatrix x = random_features(g.n, 2, 17);
    OperatorSpec base = op::line_sdne(0.5);
    const int k = 3;
    auto steps = smoothing_trajectory(base, g, x, k);
    auto single = smoothing_trajectory(power_spec(base, k), g, x, 1);
    CHECK(steps.back().max_row_dist == doctest::Approx(single[0].max_row_dist).epsilon(1e-8));
    CHECK(steps.back().dirichlet == doctest::Approx(single[0].dirichlet).epsilon(1e-8));
    CHECK(steps.back().stationary_dist ==
          doctest::Approx(single[0].stationary_dist).epsilon(1e-8));
  }
}

TEST_CASE("restart filtering keeps rough energy") {
  Graph g = random_connected_graph(25, 4.0, 18);
  FeatureMatrix x = random_features(g.n, 4, 19);
  double alpha = 0.2;
  FeatureMatrix z = apply_spatial(op::ppnp(alpha), g, x);
  SpectralBasis basis = eigendecompose(normalize(g, NormKind::RenormSymLaplacian));
  // Spectral-coefficient oracle: drop the lambda=0 direction, compare
  // energies; every kept coefficient shrinks by at most alpha / (2 - alpha).
  FeatureMatrix cx = gft(basis, x);
  FeatureMatrix cz = gft(basis, z);
  double ex = cx.bottomRows(g.n - 1).squaredNorm();
  double ez = cz.bottomRows(g.n - 1).squaredNorm();
  double floor = (alpha / (2.0 - alpha)) * (alpha / (2.0 - alpha));
  CHECK(ez >= floor * ex - 1e-9);
  // Oracle view: per-coefficient ratios never fall below the floor.
  for (int i = 1; i < g.n; ++i) {
    double coeff = alpha / (alpha + (1.0 - alpha) * basis.lambdas[i]);
    CHECK(coeff >= alpha / (2.0 - alpha) - 1e-12);
  }
}

TEST_CASE("per-filter Rayleigh contraction") {
  Graph g = random_connected_graph(22, 4.0, 21);
  FeatureMatrix x = random_features(g.n, 1, 22);
  auto check_contraction = [&](const OperatorSpec& spec, const Graph& graph,
                               const Eigen::VectorXd& v) {
    NormalizedMatrix lap = normalize(graph, laplacian_of(spec.norm_kind));
    SpectralBasis basis = eigendecompose(lap);
    // Hypothesis check: non-negative and non-increasing on the actual
    // spectrum.
    double prev = std::numeric_limits<double>::infinity();
    for (int i = 0; i < basis.n(); ++i) {
      double r = spec.response(basis.lambdas[i]);
      REQUIRE(r >= 0.0);
      REQUIRE(r <= prev + 1e-12);
      prev = r;
    }
    Eigen::VectorXd z = apply_spectral(spec, basis, v);
    Eigen::MatrixXd dense = Eigen::MatrixXd(lap.values);
    double before = v.dot(dense * v) / v.squaredNorm();
    double after = z.dot(dense * z) / z.squaredNorm();
    CHECK(after <= before + 1e-9);
  };
  check_contraction(op::gcn(), g, x);
  check_contraction(op::sage_mean(), g, x);
  check_contraction(op::ppnp(0.3), g, x);
  check_contraction(op::parwalks(0.7), g, x);
  // sgc's response is only monotone when the spectrum stays within [0, 1];
  // complete graphs have that property.
  Graph k6 = complete_graph(6);
  check_contraction(op::sgc(3), k6, random_features(6, 1, 23));
}

TEST_CASE("analytic_label_prop") {
  Graph g = random_connected_graph(18, 4.0, 24);
  FeatureMatrix y = random_features(g.n, 3, 25);
  SUBCASE("tiny alpha returns the labels") {
    FeatureMatrix z = analytic_label_prop(normalize(g, NormKind::SymLaplacian), y, 1e-9);
    CHECK((z - y).cwiseAbs().maxCoeff() <= 1e-6);
  }
  SUBCASE("matches the auto-regressive filter") {
    double alpha = 0.8;
    FeatureMatrix z = analytic_label_prop(normalize(g, NormKind::SymLaplacian), y, alpha);
    FeatureMatrix w = apply_spatial(op::auto_regressive(alpha), g, y);
    CHECK((z - w).cwiseAbs().maxCoeff() <= 1e-10);
  }
  SUBCASE("constant labels are a fixed point of the combinatorial kind") {
    FeatureMatrix c = FeatureMatrix::Ones(g.n, 2);
    FeatureMatrix z = analytic_label_prop(normalize(g, NormKind::Laplacian), c, 2.0);
    CHECK((z - c).cwiseAbs().maxCoeff() <= 1e-12);
  }
  SUBCASE("kind and parameter validation") {
    CHECK_GFZ_ERROR(analytic_label_prop(normalize(g, NormKind::Sym), y, 1.0),
                    ErrorCode::KindMismatch);
    CHECK_GFZ_ERROR(analytic_label_prop(normalize(g, NormKind::SymLaplacian), y, 0.0),
                    ErrorCode::Parameter);
  }
}

TEST_CASE("bipartiteness detector") {
  CHECK(is_bipartite(oracle::k2()));
  CHECK(is_bipartite(oracle::p3()));
  CHECK(is_bipartite(path_graph(8)));
  CHECK(!is_bipartite(oracle::triangle()));
  CHECK(!is_bipartite(random_connected_graph(15, 4.0, 26, /*ensure_odd_cycle=*/true)));
}
