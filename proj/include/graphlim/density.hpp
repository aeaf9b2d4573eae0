#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"
#include "graphlim/rational.hpp"

namespace graphlim {

/// Monte Carlo estimate of a density.
struct Estimate {
  double mean = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
};

/// A density value: either exact or a sampled estimate, never both.
class DensityValue {
 public:
  static DensityValue exact(Rational value) { return DensityValue(std::move(value)); }
  static DensityValue estimate(Estimate e) { return DensityValue(e); }

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  /// Throws std::bad_variant_access on the wrong alternative.
  const Rational& exact_value() const { return std::get<Rational>(value_); }
  const Estimate& estimate_value() const { return std::get<Estimate>(value_); }

  /// "p/q" for exact values, "mean ± stderr (N)" for estimates.
  std::string to_string() const;

 private:
  explicit DensityValue(Rational v) : value_(std::move(v)) {}
  explicit DensityValue(Estimate e) : value_(e) {}

  std::variant<Rational, Estimate> value_;
};

/// Size limits for the exact evaluators. Exceeding any of them raises
/// LimitExceeded instead of truncating.
struct DensityLimits {
  std::size_t max_nodes = 8;
  std::size_t max_blocks = 64;
  std::uint64_t max_work = std::uint64_t{1} << 36;
};

/// Label -> block index of the point the labeled node is pinned to.
using AnchorAssignment = std::map<Label, std::size_t>;

/// hom(F, G) / |V(G)|^|V(F)| for unlabeled F and simple unlabeled G. Parallel
/// edges of F collapse, since 0/1 entries are idempotent.
DensityValue density_graph(const LabeledMultigraph& f, const LabeledMultigraph& g, const DensityLimits& limits = {});

/// Exact t(F, H) for unlabeled F: the sum over all block maps of the product
/// of entry powers and block weights.
DensityValue density_exact(const LabeledMultigraph& f, const StepGraphon& h, const DensityLimits& limits = {});

/// Exact t_alpha(F, H): labeled nodes sit on their anchor blocks and carry no
/// weight; only unlabeled nodes are averaged.
DensityValue anchored_density(const LabeledMultigraph& f, const StepGraphon& h, const AnchorAssignment& anchors,
                              const DensityLimits& limits = {});

/// E over a random block x of prod_i W(x, anchors[i])^exponents[i].
DensityValue mixed_moment(const StepGraphon& h, const std::vector<std::size_t>& anchors,
                          const std::vector<unsigned>& exponents);

/// Mean of prod_{ij} K(X_i, X_j)^mult over `samples` independent draws, with
/// the streams described in rng.hpp. Work is sharded over `threads` workers;
/// the result is bit-identical for every thread count.
DensityValue density_mc(const LabeledMultigraph& f, const BlackBoxKernel& kernel, std::uint64_t samples,
                        std::uint64_t seed, unsigned threads = 1);

struct ProductIdentity {
  Rational lhs;  // t(F1 F2, H) with the product unlabeled
  Rational rhs;  // integral of t_x(F1, H) t_x(F2, H) over the labeled positions
};

/// Both sides of the gluing identity for two graphs with the same label set.
ProductIdentity product_identity_check(const LabeledMultigraph& f1, const LabeledMultigraph& f2,
                                       const StepGraphon& h, const DensityLimits& limits = {});

}  // namespace graphlim
