#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "graphlim/graph.hpp"
#include "graphlim/graphon.hpp"

namespace graphlim {

/// Total map from block index to class id, classes numbered 0..c-1 with none empty.
class BlockPartition {
 public:
  /// Throws InvalidArgument unless the ids are contiguous from 0.
  explicit BlockPartition(std::vector<std::size_t> class_of);

  /// Groups equal keys; classes numbered by first occurrence.
  template <typename Key>
  static BlockPartition grouping(const std::vector<Key>& keys);

  const std::vector<std::size_t>& class_of() const noexcept { return class_of_; }
  std::size_t class_of(std::size_t block) const { return class_of_[block]; }
  std::size_t block_count() const noexcept { return class_of_.size(); }
  std::size_t class_count() const noexcept { return classes_; }

  friend bool operator==(const BlockPartition& a, const BlockPartition& b) { return a.class_of_ == b.class_of_; }

 private:
  std::vector<std::size_t> class_of_;
  std::size_t classes_ = 0;
};

/// Blocks are twins when their rows agree on every positive-weight column.
BlockPartition twin_partition(const StepGraphon& h);

/// Class weights are member-weight sums; class-pair values are weight-weighted
/// averages. Classes of total weight 0 are dropped, the rest keep id order.
StepGraphon quotient(const StepGraphon& h, const BlockPartition& p);

/// Block -> block map; nullopt for zero-weight blocks, which have no image.
using BlockMap = std::vector<std::optional<std::size_t>>;

struct TwinReduction {
  StepGraphon reduced;
  BlockMap class_of_block;  // original block -> block of `reduced`
};

/// Drops zero-weight blocks and merges twins. The result is twin-free with
/// strictly positive weights.
TwinReduction reduce_twins(const StepGraphon& h);
StepGraphon twin_reduce(const StepGraphon& h);

struct AnchorTags {
  std::vector<std::vector<Rational>> tags;  // tags[b][m] = W(b, anchors[m])
  BlockPartition partition;                 // blocks with equal tags
};

AnchorTags anchor_tags(const StepGraphon& h, const std::vector<std::size_t>& anchors);

/// m independent blocks drawn with probability equal to their weight.
std::vector<std::size_t> random_anchors(const StepGraphon& h, std::size_t m, std::uint64_t seed);

/// Quotient by the anchor-tag partition.
StepGraphon anchored_quotient(const StepGraphon& h, const std::vector<std::size_t>& anchors);

/// Exact block isomorphism: bijection[i] is the block of `b` matched to block i
/// of `a`, preserving weights and values. No reduction is applied.
std::optional<std::vector<std::size_t>> find_block_isomorphism(const StepGraphon& a, const StepGraphon& b);

struct Isomorphic {
  std::vector<std::size_t> bijection;  // reduced H1 block -> reduced H2 block
};

enum class WitnessKind { BlockCount, WeightMultiset, ValueMultiset, SearchExhausted };

struct NotIsomorphic {
  WitnessKind kind;
  std::string description;
  std::optional<LabeledMultigraph> distinguisher;  // only when requested
};

struct WeakIsoVerdict {
  std::variant<Isomorphic, NotIsomorphic> outcome;
  StepGraphon reduced1;
  StepGraphon reduced2;

  bool is_isomorphic() const noexcept { return std::holds_alternative<Isomorphic>(outcome); }
};

/// Decides weak isomorphism of two step graphons by reducing both to
/// twin-free form and matching blocks exactly. Invariants are checked
/// cheapest first: block count, weight multiset, value multiset, search.
WeakIsoVerdict weak_iso(const StepGraphon& h1, const StepGraphon& h2);

/// First connected simple graph (in enumerate_simple_graphs order) whose exact
/// densities differ. nullopt is inconclusive, not a proof of equivalence.
std::optional<LabeledMultigraph> find_distinguishing_graph(const StepGraphon& h1, const StepGraphon& h2,
                                                           std::size_t max_nodes);

struct CommonQuotient {
  StepGraphon common;
  BlockMap map1;
  BlockMap map2;
};

/// A graphon both inputs pull back from, with the two block maps. nullopt
/// exactly when weak_iso says NotIsomorphic.
std::optional<CommonQuotient> common_quotient(const StepGraphon& h1, const StepGraphon& h2);

/// Nonnegative matrix with row sums = weights of H1 and column sums = weights of H2.
struct CouplingMatrix {
  RationalMatrix masses;

  std::size_t rows() const noexcept { return masses.size(); }
  std::size_t cols() const noexcept { return masses.empty() ? 0 : masses.front().size(); }
};

/// Independent coupling within each common-quotient class:
/// mass(i, j) = w_i w'_j / q_c when both blocks map to class c.
std::optional<CouplingMatrix> build_coupling(const StepGraphon& h1, const StepGraphon& h2);

/// {"rows": r, "cols": c, "masses": [[...]]} with rational strings.
std::string format_coupling(const CouplingMatrix& c);
CouplingMatrix parse_coupling(std::string_view text);

/// {"class_of": [...]} or a bare comma-separated list of class ids.
BlockPartition parse_partition(std::string_view text);

/// Human-readable verdict: "Isomorphic" followed by the bijection and the
/// common reduced form, or "NotIsomorphic: <reason>".
std::string format_verdict(const WeakIsoVerdict& v);

// ---------------------------------------------------------------------------

template <typename Key>
BlockPartition BlockPartition::grouping(const std::vector<Key>& keys) {
  std::vector<std::size_t> ids(keys.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::size_t c = 0;
    while (c < reps.size() && !(keys[reps[c]] == keys[i])) ++c;
    if (c == reps.size()) reps.push_back(i);
    ids[i] = c;
  }
  return BlockPartition(std::move(ids));
}

}  // namespace graphlim
