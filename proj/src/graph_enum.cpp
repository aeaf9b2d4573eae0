// Isomorphism-class enumeration of small simple graphs.
//
// Canonical form: the lexicographically largest upper-triangle bit string over
// all vertex orders that list vertices by nonincreasing degree. Bits are read
// column by column, (0,1), (0,2), (1,2), (0,3), ... Graphs on n nodes are grown
// from the canonical graphs on n-1 nodes by attaching a new vertex to every
// neighbor subset.

#include <algorithm>
#include <set>
#include <tuple>

#include "graphlim/errors.hpp"
#include "graphlim/graph.hpp"

namespace graphlim {
namespace {

constexpr std::size_t kMaxCanonicalNodes = 11;

using Adjacency = std::vector<std::uint32_t>;

struct CanonSearch {
  const Adjacency& adj;
  std::vector<int> degree_at;  // required degree for each position
  std::vector<int> degree;
  std::size_t n;
  std::size_t total_bits;
  std::vector<std::size_t> order;
  std::vector<bool> used;
  std::uint64_t best = 0;
  bool have_best = false;

  void run(std::size_t pos, std::uint64_t prefix, std::size_t bits) {
    // Lexicographic order: a prefix below the best one can never overtake it.
    if (have_best && prefix < (best >> (total_bits - bits))) return;
    if (pos == n) {
      if (!have_best || prefix > best) best = prefix;
      have_best = true;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v] || degree[v] != degree_at[pos]) continue;
      std::uint64_t next = prefix;
      for (std::size_t i = 0; i < pos; ++i) next = (next << 1) | ((adj[order[i]] >> v) & 1u);
      used[v] = true;
      order[pos] = v;
      run(pos + 1, next, bits + pos);
      used[v] = false;
    }
  }
};

std::uint64_t canonical_bits(const Adjacency& adj) {
  const std::size_t n = adj.size();
  CanonSearch s{adj, {}, {}, n, n * (n - 1) / 2, std::vector<std::size_t>(n), std::vector<bool>(n, false)};
  s.degree.resize(n);
  for (std::size_t v = 0; v < n; ++v) s.degree[v] = __builtin_popcount(adj[v]);
  s.degree_at = s.degree;
  std::sort(s.degree_at.begin(), s.degree_at.end(), std::greater<>());
  s.run(0, 0, 0);
  return s.best;
}

std::uint64_t with_size(std::uint64_t bits, std::size_t n) { return (std::uint64_t{n} << 56) | bits; }

Adjacency decode(std::uint64_t code) {
  const std::size_t n = code >> 56;
  const std::size_t total = n * (n - 1) / 2;
  Adjacency adj(n, 0);
  std::size_t bit = total;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      --bit;
      if ((code >> bit) & 1u) {
        adj[i] |= 1u << j;
        adj[j] |= 1u << i;
      }
    }
  return adj;
}

bool connected(const Adjacency& adj) {
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::size_t v = 0; v < adj.size(); ++v)
      if ((frontier >> v) & 1u) next |= adj[v];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == (adj.size() == 32 ? ~0u : (1u << adj.size()) - 1);
}

LabeledMultigraph to_graph(const Adjacency& adj) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < adj.size(); ++i)
    for (std::size_t j = i + 1; j < adj.size(); ++j)
      if ((adj[i] >> j) & 1u) edges.push_back({i, j, 1});
  return {adj.size(), std::move(edges)};
}

}  // namespace

std::uint64_t canonical_code(const LabeledMultigraph& simple) {
  const std::size_t n = simple.node_count();
  if (n > kMaxCanonicalNodes) throw LimitExceeded("canonical form supports at most 11 nodes");
  if (!simple.is_simple() || simple.is_labeled())
    throw InvalidArgument("canonical_code needs a simple unlabeled graph");
  Adjacency adj(n, 0);
  for (const Edge& e : simple.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  return with_size(canonical_bits(adj), n);
}

std::vector<LabeledMultigraph> enumerate_simple_graphs(std::size_t max_nodes, std::size_t limit) {
  if (max_nodes == 0) throw InvalidArgument("max_nodes must be positive");
  if (max_nodes > limit || max_nodes > kMaxCanonicalNodes)
    throw LimitExceeded("enumeration limited to " + std::to_string(std::min(limit, kMaxCanonicalNodes)) +
                        " nodes, asked for " + std::to_string(max_nodes));

  struct Entry {
    std::size_t nodes;
    int edges;
    std::uint64_t code;
  };
  std::vector<Entry> out;
  std::set<std::uint64_t> level{with_size(0, 1)};
  for (std::size_t n = 2; n <= max_nodes; ++n) {
    std::set<std::uint64_t> next;
    for (std::uint64_t code : level) {
      const Adjacency base = decode(code);
      for (std::uint32_t nbrs = 0; nbrs < (1u << (n - 1)); ++nbrs) {
        Adjacency adj = base;
        adj.push_back(nbrs);
        for (std::size_t v = 0; v + 1 < n; ++v)
          if ((nbrs >> v) & 1u) adj[v] |= 1u << (n - 1);
        next.insert(with_size(canonical_bits(adj), n));
      }
    }
    for (std::uint64_t code : next) {
      const Adjacency adj = decode(code);
      if (!connected(adj)) continue;
      int edges = 0;
      for (auto row : adj) edges += __builtin_popcount(row);
      out.push_back({n, edges / 2, code});
    }
    level = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return std::tie(a.nodes, a.edges, a.code) < std::tie(b.nodes, b.edges, b.code);
  });

  std::vector<LabeledMultigraph> graphs;
  graphs.reserve(out.size());
  for (const Entry& e : out) graphs.push_back(to_graph(decode(e.code)));
  return graphs;
}

}  // namespace graphlim
