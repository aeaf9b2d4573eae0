#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace graphlim {

using NodeId = std::size_t;
using Label = std::uint64_t;

/// One unordered node pair with its number of parallel edges. Stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  unsigned mult = 1;

  auto operator<=>(const Edge&) const = default;
};

/// Finite loopless multigraph in which some nodes carry distinct nonnegative
/// integer labels. Parallel edges are aggregated into a multiplicity per pair;
/// edges are kept sorted lexicographically.
class LabeledMultigraph {
 public:
  /// Throws InvalidArgument on loops, out-of-range ids, zero multiplicity,
  /// zero nodes or repeated labels. Repeated pairs are merged.
  LabeledMultigraph(std::size_t node_count, std::vector<Edge> edges,
                    std::map<NodeId, Label> labels = {});

  std::size_t node_count() const noexcept { return node_count_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::map<NodeId, Label>& labels() const noexcept { return labels_; }

  std::optional<Label> label_of(NodeId node) const;
  std::optional<NodeId> node_with_label(Label label) const;
  unsigned multiplicity(NodeId a, NodeId b) const;

  std::size_t pair_count() const noexcept { return edges_.size(); }
  std::uint64_t total_multiplicity() const noexcept;
  bool is_simple() const noexcept;
  bool is_labeled() const noexcept { return !labels_.empty(); }

  friend bool operator==(const LabeledMultigraph&, const LabeledMultigraph&) = default;

 private:
  std::size_t node_count_;
  std::vector<Edge> edges_;
  std::map<NodeId, Label> labels_;
};

LabeledMultigraph complete_graph(std::size_t n);
LabeledMultigraph path_graph(std::size_t nodes);
LabeledMultigraph cycle_graph(std::size_t n);

/// Same graph with every label removed.
LabeledMultigraph unlabel(const LabeledMultigraph& f);

/// Disjoint union with nodes carrying the same label identified. Nodes of `a`
/// keep their ids; unmatched nodes of `b` follow in their original order.
LabeledMultigraph product(const LabeledMultigraph& a, const LabeledMultigraph& b);

/// Replaces one parallel copy of {a, b} by a path through `new_nodes` fresh
/// unlabeled nodes (appended after the existing ones, ordered from a to b).
LabeledMultigraph subdivide_edge(const LabeledMultigraph& f, NodeId a, NodeId b, std::size_t new_nodes);

/// Multiplies every multiplicity by q (q >= 1).
LabeledMultigraph edge_power(const LabeledMultigraph& f, unsigned q);

/// Unlabeled center (node 0) joined to leaf i (node i, label i) by exponents[i-1]
/// parallel edges. Throws InvalidArgument when every exponent is zero.
LabeledMultigraph star_multigraph(const std::vector<unsigned>& exponents);

/// Label-preserving multigraph isomorphism.
bool are_isomorphic(const LabeledMultigraph& a, const LabeledMultigraph& b);

bool is_connected(const LabeledMultigraph& f);

inline constexpr std::size_t kDefaultEnumerationLimit = 7;

/// One representative per isomorphism class of connected simple unlabeled
/// graphs on 2..max_nodes nodes, ordered by (nodes, edges, canonical code).
/// Throws LimitExceeded when max_nodes > limit.
std::vector<LabeledMultigraph> enumerate_simple_graphs(std::size_t max_nodes,
                                                       std::size_t limit = kDefaultEnumerationLimit);

/// Canonical code of a simple graph on at most 11 nodes; equal iff isomorphic.
std::uint64_t canonical_code(const LabeledMultigraph& simple);

/// Reads the text graph format: header "n m", m lines "u v [mult]", then
/// optional "label <node> <label>" lines. Throws ParseError.
LabeledMultigraph parse_graph(std::string_view text);

/// Exact inverse of parse_graph: edges in sorted order, multiplicity written
/// only when > 1, labels sorted by node.
std::string format_graph(const LabeledMultigraph& f);

/// Short single-line form such as "3:0-1;1-2" (multiplicity as "0-1x2") used in reports.
std::string describe(const LabeledMultigraph& f);

}  // namespace graphlim
