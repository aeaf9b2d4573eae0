#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"

namespace graphlim {

/// W-random graph G(n, H): node i gets an independent block b_i drawn by
/// weight, and each pair {i, j} is an edge with probability values[b_i][b_j].
/// Streams are keyed per node and per pair (see rng.hpp), so the result does
/// not depend on generation order.
LabeledMultigraph sample_wrandom(const StepGraphon& h, std::size_t n, std::uint64_t seed);

struct ConvergenceRow {
  std::size_t n = 0;
  std::size_t reps = 0;
  double median_error = 0.0;
  double max_error = 0.0;
};

struct ConvergenceReport {
  LabeledMultigraph motif;
  std::vector<ConvergenceRow> rows;
};

/// For each size, `reps` W-random graphs and the errors |t(F, G_n) - t(F, H)|.
ConvergenceReport convergence_experiment(const StepGraphon& h, const LabeledMultigraph& f,
                                         const std::vector<std::size_t>& sizes, std::size_t reps,
                                         std::uint64_t seed);

/// CSV with header motif,n,rep_count,median_err,max_err. The motif column is
/// `motif_name`, or describe(report.motif) when empty.
std::string format_csv(const ConvergenceReport& report, const std::string& motif_name = {});

}  // namespace graphlim
