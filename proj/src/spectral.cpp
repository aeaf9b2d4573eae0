#include "graphlim/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "graphlim/density.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/reduction.hpp"

namespace graphlim {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix kernel_matrix(const StepGraphon& h) {
  const std::size_t n = h.block_count();
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(h.weight(i).get_d());
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = root[i] * h.value(i, j).get_d() * root[j];
  return m;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a(r, p), arq = a(r, q);
    a(r, p) = a(p, r) = c * arp - s * arq;
    a(r, q) = a(q, r) = s * arp + c * arq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = a(q, p) = 0.0;

  for (std::size_t r = 0; r < n; ++r) {
    const double vrp = v(r, p), vrq = v(r, q);
    v(r, p) = c * vrp - s * vrq;
    v(r, q) = s * vrp + c * vrq;
  }
}

}  // namespace

Spectrum eigendecompose(const Matrix& m, const JacobiOptions& options) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("eigendecompose needs a square matrix");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::fabs(m(i, j) - m(j, i)) > options.symmetry_tolerance)
        throw InvalidArgument("eigendecompose needs a symmetric matrix");

  Matrix a = m;
  Matrix v = Matrix::identity(n);
  int sweeps = 0;
  double residual = off_diagonal_norm(a);
  while (residual >= options.tolerance) {
    if (sweeps == options.max_sweeps)
      throw NotConverged("Jacobi did not converge in " + std::to_string(sweeps) + " sweeps", residual);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    ++sweeps;
    residual = off_diagonal_norm(a);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return std::fabs(a(x, x)) > std::fabs(a(y, y)); });
  // Within runs of equal magnitude (+-lambda pairs), positive first.
  for (std::size_t s = 0; s < n;) {
    std::size_t e = s + 1;
    while (e < n && std::fabs(std::fabs(a(order[s], order[s])) - std::fabs(a(order[e], order[e]))) < 1e-10) ++e;
    std::stable_sort(order.begin() + s, order.begin() + e,
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
    s = e;
  }

  Spectrum out;
  out.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues.push_back(a(order[k], order[k]));
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
  }
  out.residual = residual;
  out.sweeps = sweeps;
  return out;
}

double cycle_density_spectral(const StepGraphon& h, unsigned k) {
  if (k < 3) throw InvalidArgument("cycle length must be at least 3");
  const Spectrum s = eigendecompose(kernel_matrix(h));
  double sum = 0.0;
  for (double lambda : s.eigenvalues) sum += std::pow(lambda, static_cast<double>(k));
  return sum;
}

Rational path_operator_entry(const StepGraphon& h, std::size_t i, std::size_t j, unsigned k) {
  const std::size_t n = h.block_count();
  if (i >= n || j >= n) throw InvalidArgument("block index out of range");
  if (k == 0) throw InvalidArgument("path length must be at least 1");
  std::vector<Rational> column(n);
  for (std::size_t a = 0; a < n; ++a) column[a] = h.value(a, j);
  for (unsigned step = 1; step < k; ++step) {
    std::vector<Rational> next(n, Rational(0));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) next[a] += h.value(a, b) * h.weight(b) * column[b];
    column = std::move(next);
  }
  return column[i];
}

bool MultigraphCheckReport::subdivisions_equal() const {
  return std::all_of(subdivisions.begin(), subdivisions.end(),
                     [](const SubdivisionCheck& s) { return s.density1 == s.density2; });
}

namespace {

struct Expansion {
  std::vector<double> eigenvalues;
  std::vector<double> coefficients;
};

// a_n = sum_ij v_n[i] v_n[j] sqrt(w_i w_j) t_ij(F', H) for the 2-labeled rest F'.
Expansion expand(const StepGraphon& h, const LabeledMultigraph& rest) {
  const std::size_t n = h.block_count();
  const Spectrum s = eigendecompose(kernel_matrix(h));
  Matrix t(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double scale = std::sqrt(h.weight(i).get_d() * h.weight(j).get_d());
      t(i, j) = scale == 0.0 ? 0.0 : scale * anchored_density(rest, h, {{1, i}, {2, j}}).exact_value().get_d();
    }
  Expansion out{s.eigenvalues, {}};
  for (std::size_t k = 0; k < n; ++k) {
    double a = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a += s.eigenvectors(i, k) * s.eigenvectors(j, k) * t(i, j);
    out.coefficients.push_back(a);
  }
  return out;
}

double power_sum(const Expansion& e, unsigned k) {
  double s = 0.0;
  for (std::size_t n = 0; n < e.eigenvalues.size(); ++n)
    s += e.coefficients[n] * std::pow(e.eigenvalues[n], static_cast<double>(k));
  return s;
}

}  // namespace

MultigraphCheckReport multigraph_from_simple_check(const StepGraphon& h1, const StepGraphon& h2,
                                                   const LabeledMultigraph& f, std::size_t max_simple_nodes) {
  MultigraphCheckReport r{unlabel(f)};
  const LabeledMultigraph& pattern = r.pattern;
  r.simple_densities_agree = !find_distinguishing_graph(h1, h2, max_simple_nodes).has_value();
  r.density1 = density_exact(pattern, h1).exact_value();
  r.density2 = density_exact(pattern, h2).exact_value();
  r.spectral_density1 = r.density1.get_d();
  r.spectral_density2 = r.density2.get_d();
  if (pattern.edges().empty()) return r;

  auto chosen = std::find_if(pattern.edges().begin(), pattern.edges().end(), [](const Edge& e) { return e.mult > 1; });
  r.has_parallel_edge = chosen != pattern.edges().end();
  if (!r.has_parallel_edge) chosen = pattern.edges().begin();
  r.pair_u = chosen->u;
  r.pair_v = chosen->v;

  std::vector<Edge> rest_edges;
  for (Edge e : pattern.edges()) {
    if (e.u == r.pair_u && e.v == r.pair_v && --e.mult == 0) continue;
    rest_edges.push_back(e);
  }
  const LabeledMultigraph rest(pattern.node_count(), rest_edges, {{r.pair_u, 1}, {r.pair_v, 2}});
  const Expansion e1 = expand(h1, rest);
  const Expansion e2 = expand(h2, rest);
  r.spectral_density1 = power_sum(e1, 1);
  r.spectral_density2 = power_sum(e2, 1);

  // Subdivisions stop once the pattern outgrows the exact evaluator.
  for (unsigned k = 2; k <= 6 && pattern.node_count() + k - 1 <= DensityLimits{}.max_nodes; ++k) {
    const LabeledMultigraph fk = subdivide_edge(pattern, r.pair_u, r.pair_v, k - 1);
    r.subdivisions.push_back({k, density_exact(fk, h1).exact_value(), density_exact(fk, h2).exact_value(),
                              power_sum(e1, k), power_sum(e2, k)});
  }

  struct Term {
    double lambda;
    double a;
    int side;
  };
  std::vector<Term> terms;
  for (std::size_t n = 0; n < e1.eigenvalues.size(); ++n) terms.push_back({e1.eigenvalues[n], e1.coefficients[n], 1});
  for (std::size_t n = 0; n < e2.eigenvalues.size(); ++n) terms.push_back({e2.eigenvalues[n], e2.coefficients[n], 2});
  std::stable_sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) { return x.lambda > y.lambda; });
  for (std::size_t s = 0; s < terms.size();) {
    std::size_t e = s;
    SpectralGroup g{0.0, 0.0, 0.0};
    double total = 0.0;
    while (e < terms.size() && terms[s].lambda - terms[e].lambda < kEigenvalueGrouping) {
      total += terms[e].lambda;
      (terms[e].side == 1 ? g.coefficient1 : g.coefficient2) += terms[e].a;
      ++e;
    }
    g.eigenvalue = total / static_cast<double>(e - s);
    r.groups.push_back(g);
    s = e;
  }
  return r;
}

std::string format_report(const MultigraphCheckReport& r) {
  std::ostringstream out;
  out << "pattern: " << describe(r.pattern) << '\n';
  out << "simple densities agree: " << (r.simple_densities_agree ? "yes" : "no") << '\n';
  if (!r.pattern.edges().empty())
    out << "subdivided pair: " << r.pair_u << '-' << r.pair_v << (r.has_parallel_edge ? " (parallel)" : " (simple)")
        << '\n';
  for (const auto& s : r.subdivisions)
    out << "F_" << s.k << ": " << to_string(s.density1) << " vs " << to_string(s.density2)
        << (s.density1 == s.density2 ? "  equal" : "  DIFFER") << "  spectral " << format_real(s.spectral1) << " vs "
        << format_real(s.spectral2) << '\n';
  out << "t(F): " << to_string(r.density1) << " vs " << to_string(r.density2)
      << (r.densities_equal() ? "  equal" : "  DIFFER") << '\n';
  out << "spectral t(F): " << format_real(r.spectral_density1) << " vs " << format_real(r.spectral_density2) << '\n';
  out << "eigenvalue groups (tolerance " << kEigenvalueGrouping << "):\n";
  for (const auto& g : r.groups)
    out << "  " << format_real(g.eigenvalue) << "  a=" << format_real(g.coefficient1)
        << "  b=" << format_real(g.coefficient2) << '\n';
  out << "verdict: " << (r.densities_equal() ? "equivalent on this pattern" : "not equivalent") << '\n';
  return out.str();
}

}  // namespace graphlim
