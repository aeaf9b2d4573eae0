#include "graphlim/random_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "graphlim/density.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

LabeledMultigraph sample_wrandom(const StepGraphon& h, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample needs at least one node");
  if (h.range().lo < 0 || h.range().hi > 1) throw InvalidArgument("W-random sampling needs values in [0,1]");

  // Threshold t_ab: an edge appears iff the uniform draw u satisfies u < t_ab,
  // which for doubles is exactly u < value (see ceil_to_double).
  const std::size_t blocks = h.block_count();
  std::vector<double> threshold(blocks * blocks);
  for (std::size_t a = 0; a < blocks; ++a)
    for (std::size_t b = 0; b < blocks; ++b) threshold[a * blocks + b] = ceil_to_double(h.value(a, b));

  std::vector<std::size_t> block(n);
  for (std::size_t i = 0; i < n; ++i) block[i] = h.block_at(SplitMix64(derive_seed(seed, {kNodeDomain, i})).uniform());

  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double u = SplitMix64(derive_seed(seed, {kEdgeDomain, i, j})).uniform();
      if (u < threshold[block[i] * blocks + block[j]]) edges.push_back({i, j, 1});
    }
  return {n, std::move(edges)};
}

namespace {

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const std::size_t m = xs.size() / 2;
  return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

}  // namespace

ConvergenceReport convergence_experiment(const StepGraphon& h, const LabeledMultigraph& f,
                                         const std::vector<std::size_t>& sizes, std::size_t reps,
                                         std::uint64_t seed) {
  if (reps == 0) throw InvalidArgument("convergence experiment needs at least one replication");
  const Rational target = density_exact(f, h).exact_value();
  ConvergenceReport report{f, {}};
  for (std::size_t n : sizes) {
    if (n < f.node_count())
      throw InvalidArgument("size " + std::to_string(n) + " is smaller than the motif");
    std::vector<double> errors;
    errors.reserve(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      const LabeledMultigraph g = sample_wrandom(h, n, derive_seed(seed, {n, r}));
      const Rational diff = density_graph(f, g).exact_value() - target;
      errors.push_back(std::fabs(diff.get_d()));
    }
    report.rows.push_back({n, reps, median(errors), *std::max_element(errors.begin(), errors.end())});
  }
  return report;
}

std::string format_csv(const ConvergenceReport& report, const std::string& motif_name) {
  const std::string motif = motif_name.empty() ? describe(report.motif) : motif_name;
  std::ostringstream out;
  out << "motif,n,rep_count,median_err,max_err\n";
  for (const auto& row : report.rows)
    out << motif << ',' << row.n << ',' << row.reps << ',' << format_real(row.median_error) << ','
        << format_real(row.max_error) << '\n';
  return out.str();
}

}  // namespace graphlim
