#include "graphlim/graph.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>

#include "graphlim/errors.hpp"

namespace graphlim {

LabeledMultigraph::LabeledMultigraph(std::size_t node_count, std::vector<Edge> edges,
                                     std::map<NodeId, Label> labels)
    : node_count_(node_count), labels_(std::move(labels)) {
  if (node_count_ == 0) throw InvalidArgument("graph must have at least one node");

  std::map<std::pair<NodeId, NodeId>, unsigned> merged;
  for (const Edge& e : edges) {
    if (e.u >= node_count_ || e.v >= node_count_)
      throw InvalidArgument("edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " out of range");
    if (e.u == e.v) throw InvalidArgument("loop at node " + std::to_string(e.u));
    if (e.mult == 0) throw InvalidArgument("zero multiplicity");
    merged[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.mult;
  }
  edges_.reserve(merged.size());
  for (const auto& [pair, mult] : merged) edges_.push_back({pair.first, pair.second, mult});

  std::set<Label> seen;
  for (const auto& [node, label] : labels_) {
    if (node >= node_count_) throw InvalidArgument("label on missing node " + std::to_string(node));
    if (!seen.insert(label).second) throw InvalidArgument("duplicate label " + std::to_string(label));
  }
}

std::optional<Label> LabeledMultigraph::label_of(NodeId node) const {
  auto it = labels_.find(node);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> LabeledMultigraph::node_with_label(Label label) const {
  for (const auto& [node, l] : labels_)
    if (l == label) return node;
  return std::nullopt;
}

unsigned LabeledMultigraph::multiplicity(NodeId a, NodeId b) const {
  const Edge key{std::min(a, b), std::max(a, b), 0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
  if (it != edges_.end() && it->u == key.u && it->v == key.v) return it->mult;
  return 0;
}

std::uint64_t LabeledMultigraph::total_multiplicity() const noexcept {
  std::uint64_t total = 0;
  for (const Edge& e : edges_) total += e.mult;
  return total;
}

bool LabeledMultigraph::is_simple() const noexcept {
  return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.mult == 1; });
}

LabeledMultigraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) edges.push_back({i, j, 1});
  return {n, std::move(edges)};
}

LabeledMultigraph path_graph(std::size_t nodes) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < nodes; ++i) edges.push_back({i, i + 1, 1});
  return {nodes, std::move(edges)};
}

LabeledMultigraph cycle_graph(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs at least 3 nodes");
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, 1});
  return {n, std::move(edges)};
}

LabeledMultigraph unlabel(const LabeledMultigraph& f) { return {f.node_count(), f.edges()}; }

LabeledMultigraph product(const LabeledMultigraph& a, const LabeledMultigraph& b) {
  std::vector<NodeId> image(b.node_count());
  std::size_t next = a.node_count();
  std::map<NodeId, Label> labels = a.labels();
  for (NodeId v = 0; v < b.node_count(); ++v) {
    auto label = b.label_of(v);
    std::optional<NodeId> shared = label ? a.node_with_label(*label) : std::nullopt;
    if (shared) {
      image[v] = *shared;
    } else {
      image[v] = next++;
      if (label) labels[image[v]] = *label;
    }
  }
  std::vector<Edge> edges = a.edges();
  for (const Edge& e : b.edges()) edges.push_back({image[e.u], image[e.v], e.mult});
  return {next, std::move(edges), std::move(labels)};
}

LabeledMultigraph subdivide_edge(const LabeledMultigraph& f, NodeId a, NodeId b, std::size_t new_nodes) {
  if (f.multiplicity(a, b) == 0)
    throw InvalidArgument("no edge between " + std::to_string(a) + " and " + std::to_string(b));
  if (new_nodes == 0) return f;

  std::vector<Edge> edges;
  for (Edge e : f.edges()) {
    if (e.u == std::min(a, b) && e.v == std::max(a, b)) {
      if (--e.mult == 0) continue;
    }
    edges.push_back(e);
  }
  NodeId prev = a;
  for (std::size_t k = 0; k < new_nodes; ++k) {
    const NodeId fresh = f.node_count() + k;
    edges.push_back({prev, fresh, 1});
    prev = fresh;
  }
  edges.push_back({prev, b, 1});
  return {f.node_count() + new_nodes, std::move(edges), f.labels()};
}

LabeledMultigraph edge_power(const LabeledMultigraph& f, unsigned q) {
  if (q == 0) throw InvalidArgument("edge power must be positive");
  std::vector<Edge> edges = f.edges();
  for (Edge& e : edges) e.mult *= q;
  return {f.node_count(), std::move(edges), f.labels()};
}

LabeledMultigraph star_multigraph(const std::vector<unsigned>& exponents) {
  if (std::all_of(exponents.begin(), exponents.end(), [](unsigned k) { return k == 0; }))
    throw InvalidArgument("star needs at least one positive exponent");
  std::vector<Edge> edges;
  std::map<NodeId, Label> labels;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    labels[i + 1] = i + 1;
    if (exponents[i] > 0) edges.push_back({0, i + 1, exponents[i]});
  }
  return {exponents.size() + 1, std::move(edges), std::move(labels)};
}

namespace {

using MultMatrix = std::vector<std::vector<unsigned>>;

MultMatrix multiplicity_matrix(const LabeledMultigraph& f) {
  MultMatrix m(f.node_count(), std::vector<unsigned>(f.node_count(), 0));
  for (const Edge& e : f.edges()) m[e.u][e.v] = m[e.v][e.u] = e.mult;
  return m;
}

// Node signature invariant under label-preserving isomorphism.
std::pair<std::optional<Label>, std::vector<unsigned>> node_signature(const LabeledMultigraph& f,
                                                                      const MultMatrix& m, NodeId v) {
  std::vector<unsigned> row;
  for (unsigned x : m[v])
    if (x > 0) row.push_back(x);
  std::sort(row.begin(), row.end());
  return {f.label_of(v), std::move(row)};
}

bool extend_isomorphism(const MultMatrix& ma, const MultMatrix& mb,
                        const std::vector<std::vector<NodeId>>& candidates, std::vector<NodeId>& image,
                        std::vector<bool>& used, NodeId v) {
  if (v == ma.size()) return true;
  for (NodeId w : candidates[v]) {
    if (used[w]) continue;
    bool ok = true;
    for (NodeId u = 0; u < v && ok; ++u) ok = ma[u][v] == mb[image[u]][w];
    if (!ok) continue;
    image[v] = w;
    used[w] = true;
    if (extend_isomorphism(ma, mb, candidates, image, used, v + 1)) return true;
    used[w] = false;
  }
  return false;
}

}  // namespace

bool are_isomorphic(const LabeledMultigraph& a, const LabeledMultigraph& b) {
  if (a.node_count() != b.node_count() || a.pair_count() != b.pair_count() ||
      a.total_multiplicity() != b.total_multiplicity() || a.labels().size() != b.labels().size())
    return false;
  const MultMatrix ma = multiplicity_matrix(a);
  const MultMatrix mb = multiplicity_matrix(b);
  const std::size_t n = a.node_count();
  std::vector<std::vector<NodeId>> candidates(n);
  for (NodeId v = 0; v < n; ++v) {
    const auto sig = node_signature(a, ma, v);
    for (NodeId w = 0; w < n; ++w)
      if (node_signature(b, mb, w) == sig) candidates[v].push_back(w);
    if (candidates[v].empty()) return false;
  }
  std::vector<NodeId> image(n);
  std::vector<bool> used(n, false);
  return extend_isomorphism(ma, mb, candidates, image, used, 0);
}

bool is_connected(const LabeledMultigraph& f) {
  std::vector<NodeId> parent(f.node_count());
  std::iota(parent.begin(), parent.end(), NodeId{0});
  auto find = [&](NodeId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = f.node_count();
  for (const Edge& e : f.edges()) {
    const NodeId ru = find(e.u), rv = find(e.v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components == 1;
}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

std::uint64_t parse_count(const std::string& tok, std::size_t line) {
  std::uint64_t value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw ParseError(ParseError::Kind::Malformed, line, "expected a nonnegative integer, got '" + tok + "'");
  return value;
}

}  // namespace

LabeledMultigraph parse_graph(std::string_view text) {
  using Kind = ParseError::Kind;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const auto line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++lineno;
    auto tokens = split_ws(line);
    if (!tokens.empty()) lines.emplace_back(lineno, std::move(tokens));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  if (lines.empty()) throw ParseError(Kind::Malformed, 1, "missing header line \"n m\"");

  const auto& [hline, header] = lines.front();
  if (header.size() != 2) throw ParseError(Kind::Malformed, hline, "header must be \"n m\"");
  const std::uint64_t n = parse_count(header[0], hline);
  const std::uint64_t m = parse_count(header[1], hline);
  if (n == 0) throw ParseError(Kind::Malformed, hline, "graph must have at least one node");
  if (lines.size() < m + 1)
    throw ParseError(Kind::Malformed, lineno, "expected " + std::to_string(m) + " edge lines");

  auto node_id = [n](const std::string& tok, std::size_t line) {
    const std::uint64_t id = parse_count(tok, line);
    if (id >= n) throw ParseError(Kind::NodeOutOfRange, line, "node " + tok + " out of range");
    return static_cast<NodeId>(id);
  };

  std::vector<Edge> edges;
  for (std::size_t k = 1; k <= m; ++k) {
    const auto& [ln, tok] = lines[k];
    if (tok.size() != 2 && tok.size() != 3)
      throw ParseError(Kind::Malformed, ln, "edge line must be \"u v [mult]\"");
    const NodeId u = node_id(tok[0], ln);
    const NodeId v = node_id(tok[1], ln);
    if (u == v) throw ParseError(Kind::Loop, ln, "loop at node " + tok[0]);
    std::uint64_t mult = tok.size() == 3 ? parse_count(tok[2], ln) : 1;
    if (mult == 0 || mult > 0xffffffffULL) throw ParseError(Kind::Malformed, ln, "bad multiplicity " + tok[2]);
    edges.push_back({u, v, static_cast<unsigned>(mult)});
  }

  std::map<NodeId, Label> labels;
  std::set<Label> used;
  for (std::size_t k = m + 1; k < lines.size(); ++k) {
    const auto& [ln, tok] = lines[k];
    if (tok.size() != 3 || tok[0] != "label")
      throw ParseError(Kind::Malformed, ln, "expected \"label <node> <label>\"");
    const NodeId node = node_id(tok[1], ln);
    const Label label = parse_count(tok[2], ln);
    if (labels.count(node)) throw ParseError(Kind::DuplicateLabel, ln, "node " + tok[1] + " labeled twice");
    if (!used.insert(label).second) throw ParseError(Kind::DuplicateLabel, ln, "duplicate label " + tok[2]);
    labels[node] = label;
  }
  return {static_cast<std::size_t>(n), std::move(edges), std::move(labels)};
}

std::string format_graph(const LabeledMultigraph& f) {
  std::ostringstream out;
  out << f.node_count() << ' ' << f.pair_count() << '\n';
  for (const Edge& e : f.edges()) {
    out << e.u << ' ' << e.v;
    if (e.mult != 1) out << ' ' << e.mult;
    out << '\n';
  }
  for (const auto& [node, label] : f.labels()) out << "label " << node << ' ' << label << '\n';
  return out.str();
}

std::string describe(const LabeledMultigraph& f) {
  std::ostringstream out;
  out << f.node_count() << ':';
  bool first = true;
  for (const Edge& e : f.edges()) {
    if (!first) out << ';';
    first = false;
    out << e.u << '-' << e.v;
    if (e.mult != 1) out << 'x' << e.mult;
  }
  for (const auto& [node, label] : f.labels()) out << ";L" << node << '=' << label;
  return out.str();
}

}  // namespace graphlim
