#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "corpus.hpp"
#include "graphlim/density.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/spectral.hpp"

using namespace graphlim;

namespace {

Matrix random_symmetric(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = u(rng);
  return m;
}

LabeledMultigraph labeled_path(std::size_t edges) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < edges; ++i) e.push_back({i, i + 1, 1});
  return LabeledMultigraph(edges + 1, e, {{0, 1}, {edges, 2}});
}

}  // namespace

TEST_CASE("kernel matrix and small spectra") {
  const Spectrum b = eigendecompose(kernel_matrix(corpus::graphon("bipartite")));
  REQUIRE(b.eigenvalues.size() == 2);
  CHECK(b.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(b.eigenvalues[1] == doctest::Approx(-0.5).epsilon(1e-14));

  const Spectrum t = eigendecompose(kernel_matrix(corpus::graphon("triangle")));
  CHECK(t.eigenvalues[0] == doctest::Approx(2.0 / 3.0));
  CHECK(t.eigenvalues[1] == doctest::Approx(-1.0 / 3.0));
  CHECK(t.eigenvalues[2] == doctest::Approx(-1.0 / 3.0));

  const Matrix k = kernel_matrix(corpus::graphon("sbm3"));
  CHECK(k(0, 1) == doctest::Approx(std::sqrt(1.0 / 6.0) * 0.25));
  CHECK(k(0, 1) == k(1, 0));

  const Spectrum d = eigendecompose(Matrix::identity(3));
  CHECK(d.sweeps == 0);
  CHECK(d.residual == 0.0);
}

TEST_CASE("Jacobi agrees with a reference eigensolver") {
  std::mt19937_64 rng(17);
  for (std::size_t n = 1; n <= 12; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const Matrix m = random_symmetric(rng, n);
      const Spectrum s = eigendecompose(m);
      Eigen::MatrixXd e(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e(i, j) = m(i, j);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(e);
      std::vector<double> ours = s.eigenvalues, theirs(ref.eigenvalues().data(), ref.eigenvalues().data() + n);
      std::sort(ours.begin(), ours.end());
      std::sort(theirs.begin(), theirs.end());
      for (std::size_t i = 0; i < n; ++i) CHECK(ours[i] == doctest::Approx(theirs[i]).epsilon(1e-10));

      for (std::size_t i = 1; i < n; ++i) CHECK(std::fabs(s.eigenvalues[i - 1]) >= std::fabs(s.eigenvalues[i]) - 1e-10);
      CHECK(s.residual < 1e-12);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          double dot = 0.0, rebuilt = 0.0;
          for (std::size_t r = 0; r < n; ++r) dot += s.eigenvectors(r, a) * s.eigenvectors(r, b);
          for (std::size_t c = 0; c < n; ++c) rebuilt += s.eigenvectors(a, c) * s.eigenvalues[c] * s.eigenvectors(b, c);
          CHECK(dot == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
          CHECK(rebuilt == doctest::Approx(m(a, b)).epsilon(1e-11).scale(1.0));
        }
    }
}

TEST_CASE("eigendecompose rejects bad input and reports non-convergence") {
  CHECK_THROWS_AS(eigendecompose(Matrix(2, 3)), InvalidArgument);
  Matrix asym(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(eigendecompose(asym), InvalidArgument);

  std::mt19937_64 rng(5);
  const Matrix m = random_symmetric(rng, 6);
  JacobiOptions capped;
  capped.max_sweeps = 1;
  try {
    eigendecompose(m, capped);
    FAIL("expected NotConverged");
  } catch (const NotConverged& e) {
    CHECK(e.residual() > 1e-12);
  }
}

TEST_CASE("ties in magnitude list the positive eigenvalue first") {
  Matrix m(2, 2);
  m(0, 1) = m(1, 0) = 0.3;
  const Spectrum s = eigendecompose(m);
  CHECK(s.eigenvalues[0] > 0);
  CHECK(s.eigenvalues[1] < 0);
}

TEST_CASE("power sums give cycle densities and the Hilbert-Schmidt norm") {
  for (const auto& [name, h] : corpus::graphons()) {
    INFO(name);
    const Spectrum s = eigendecompose(kernel_matrix(h));
    double sq = 0.0;
    for (double l : s.eigenvalues) sq += l * l;
    CHECK(sq == doctest::Approx(density_exact(corpus::graph("double_edge"), h).exact_value().get_d()).epsilon(1e-12));
    for (unsigned k = 3; k <= 8; ++k) {
      const double exact = density_exact(cycle_graph(k), h).exact_value().get_d();
      CHECK(std::fabs(cycle_density_spectral(h, k) - exact) < 1e-9);
    }
  }
  CHECK_THROWS_AS(cycle_density_spectral(corpus::graphon("half"), 2), InvalidArgument);
}

TEST_CASE("path operator entries are anchored path densities") {
  for (const auto& [name, h] : corpus::graphons()) {
    INFO(name);
    for (unsigned k = 1; k <= 6; ++k)
      for (std::size_t i = 0; i < h.block_count(); ++i)
        for (std::size_t j = 0; j < h.block_count(); ++j)
          CHECK(path_operator_entry(h, i, j, k) == anchored_density(labeled_path(k), h, {{1, i}, {2, j}}).exact_value());
  }
  const StepGraphon h = corpus::graphon("sbm3");
  CHECK(path_operator_entry(h, 0, 2, 1) == h.value(0, 2));
  CHECK_THROWS_AS(path_operator_entry(h, 3, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(path_operator_entry(h, 0, 0, 0), InvalidArgument);
}

TEST_CASE("multigraph check on an inequivalent pair") {
  const StepGraphon b = corpus::graphon("bipartite");
  const StepGraphon half = corpus::graphon("half");
  const MultigraphCheckReport r = multigraph_from_simple_check(b, half, corpus::graph("double_edge"), 3);
  CHECK_FALSE(r.simple_densities_agree);
  CHECK(r.has_parallel_edge);
  CHECK(r.density1 == parse_rational("1/2"));
  CHECK(r.density2 == parse_rational("1/4"));
  CHECK_FALSE(r.densities_equal());
  CHECK(r.spectral_density1 == doctest::Approx(0.5));
  CHECK(r.spectral_density2 == doctest::Approx(0.25));
  REQUIRE(r.subdivisions.size() == 5);
  for (const auto& s : r.subdivisions) {
    CHECK(s.spectral1 == doctest::Approx(s.density1.get_d()).epsilon(1e-12));
    CHECK(s.spectral2 == doctest::Approx(s.density2.get_d()).epsilon(1e-12));
  }
  CHECK(format_report(r).find("verdict: not equivalent") != std::string::npos);
}

TEST_CASE("multigraph check on equivalent pairs") {
  const StepGraphon b = corpus::graphon("bipartite");
  const StepGraphon split = corpus::graphon("bipartite_split");
  const StepGraphon m = corpus::graphon("mixed6");
  const std::vector<LabeledMultigraph> patterns = {
      corpus::graph("double_edge"), LabeledMultigraph(3, {{0, 1, 2}, {1, 2, 1}, {0, 2, 3}}), cycle_graph(4),
      LabeledMultigraph(1, {})};
  for (const auto& [h1, h2] : {std::pair{b, split}, std::pair{m, blowup(m, 2)}}) {
    for (const auto& f : patterns) {
      const MultigraphCheckReport r = multigraph_from_simple_check(h1, h2, f, 4);
      CHECK(r.simple_densities_agree);
      CHECK(r.densities_equal());
      CHECK(r.subdivisions_equal());
      CHECK(r.spectral_density1 == doctest::Approx(r.density1.get_d()).epsilon(1e-10));
      for (const auto& g : r.groups)
        if (std::fabs(g.eigenvalue) > 1e-9) CHECK(g.coefficient1 == doctest::Approx(g.coefficient2).epsilon(1e-9));
    }
  }
}
