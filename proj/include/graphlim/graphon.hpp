#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

/// Declared bounds on graphon values.
struct ValueRange {
  Rational lo{0};
  Rational hi{1};

  friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Throws InvalidGraphon (with a kind per failed invariant) unless the
/// weights are nonnegative and sum to exactly 1, the values matrix is square,
/// symmetric, of matching dimension, and lies within `range`.
void validate(const std::vector<Rational>& weights, const RationalMatrix& values, const ValueRange& range);

/// Step graphon: block measures plus a symmetric value matrix. Block i is
/// realized on [0,1) as the half-open interval [w_0+...+w_{i-1}, w_0+...+w_i),
/// so zero-weight blocks get empty intervals.
class StepGraphon {
 public:
  /// Validates; see validate().
  StepGraphon(std::vector<Rational> weights, RationalMatrix values, ValueRange range = {});

  std::size_t block_count() const noexcept { return weights_.size(); }
  const std::vector<Rational>& weights() const noexcept { return weights_; }
  const Rational& weight(std::size_t i) const { return weights_[i]; }
  const RationalMatrix& values() const noexcept { return values_; }
  const Rational& value(std::size_t i, std::size_t j) const { return values_[i][j]; }
  const ValueRange& range() const noexcept { return range_; }

  /// Block whose interval contains x. Throws InvalidGraphon(Domain) unless 0 <= x < 1.
  std::size_t block_at(double x) const;

  friend bool operator==(const StepGraphon& a, const StepGraphon& b) {
    return a.weights_ == b.weights_ && a.values_ == b.values_ && a.range_ == b.range_;
  }

 private:
  std::vector<Rational> weights_;
  RationalMatrix values_;
  ValueRange range_;
  // upper_[i] is the smallest double >= w_0 + ... + w_i.
  std::vector<double> upper_;
};

/// n blocks of weight 1/n with the 0/1 adjacency matrix. Requires a simple,
/// unlabeled graph.
StepGraphon from_graph(const LabeledMultigraph& g);

StepGraphon constant(const Rational& c, ValueRange range = {});

/// k-fold replication, the pull-back along x -> kx mod 1: block c*n + i is
/// copy c of block i and has weight w_i / k.
StepGraphon blowup(const StepGraphon& h, unsigned k);

/// values -> a*values + b, with the declared range mapped accordingly. a != 0.
StepGraphon affine_rescale(const StepGraphon& h, const Rational& a, const Rational& b);

/// Block i of the result is block perm[i] of h.
StepGraphon permute_blocks(const StepGraphon& h, const std::vector<std::size_t>& perm);

/// Value of h at (x, y) under the interval convention above.
Rational evaluate(const StepGraphon& h, double x, double y);

/// Bounded symmetric kernel on [0,1]^2 known only through evaluation.
struct BlackBoxKernel {
  std::function<double(double, double)> evaluator;
  double bound = 1.0;
};

/// evaluate() wrapped as a floating-point kernel.
BlackBoxKernel as_kernel(const StepGraphon& h);

/// JSON object {"weights": [...], "values": [[...]], "range": [lo, hi]} with
/// rationals as "p/q" strings. Throws InvalidArgument / InvalidGraphon.
StepGraphon parse_graphon(std::string_view text);
std::string format_graphon(const StepGraphon& h);

}  // namespace graphlim
