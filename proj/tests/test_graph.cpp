#include <doctest.h>

#include <random>
#include <set>

#include "corpus.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/graph.hpp"
#include "oracles.hpp"

using namespace graphlim;

namespace {

LabeledMultigraph random_labeled(std::mt19937_64& rng, std::size_t max_nodes, std::size_t max_labels) {
  const std::size_t n = 1 + rng() % max_nodes;
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (rng() % 2) edges.push_back({u, v, unsigned(1 + rng() % 2)});
  std::map<NodeId, Label> labels;
  std::vector<Label> pool = {1, 2, 3};
  std::shuffle(pool.begin(), pool.end(), rng);
  const std::size_t k = std::min<std::size_t>(n, rng() % (max_labels + 1));
  for (std::size_t i = 0; i < k; ++i) labels[i] = pool[i];
  return LabeledMultigraph(n, edges, labels);
}

}  // namespace

TEST_CASE("construction merges parallel pairs and rejects bad input") {
  LabeledMultigraph g(3, {{1, 0, 1}, {0, 1, 2}, {2, 1, 1}});
  CHECK(g.pair_count() == 2);
  CHECK(g.multiplicity(0, 1) == 3);
  CHECK(g.multiplicity(1, 0) == 3);
  CHECK(g.multiplicity(0, 2) == 0);
  CHECK(g.total_multiplicity() == 4);
  CHECK_FALSE(g.is_simple());
  CHECK(g.edges().front() == Edge{0, 1, 3});

  CHECK_THROWS_AS(LabeledMultigraph(0, {}), InvalidArgument);
  CHECK_THROWS_AS(LabeledMultigraph(2, {{1, 1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(LabeledMultigraph(2, {{0, 2, 1}}), InvalidArgument);
  CHECK_THROWS_AS(LabeledMultigraph(2, {{0, 1, 0}}), InvalidArgument);
  CHECK_THROWS_AS(LabeledMultigraph(2, {}, {{0, 5}, {1, 5}}), InvalidArgument);
  CHECK_THROWS_AS(LabeledMultigraph(2, {}, {{2, 5}}), InvalidArgument);
}

TEST_CASE("named families") {
  CHECK(complete_graph(4).pair_count() == 6);
  CHECK(path_graph(4).pair_count() == 3);
  CHECK(cycle_graph(5).pair_count() == 5);
  CHECK(path_graph(1).pair_count() == 0);
  CHECK(are_isomorphic(cycle_graph(3), complete_graph(3)));
  CHECK(describe(path_graph(3)) == "3:0-1;1-2");
}

TEST_CASE("product glues equal labels") {
  const LabeledMultigraph a(2, {{0, 1, 1}}, {{0, 1}, {1, 2}});
  const LabeledMultigraph b(3, {{0, 1, 1}, {1, 2, 1}}, {{0, 2}, {2, 1}});
  const LabeledMultigraph p = product(a, b);
  // b's label-2 node is a's node 1, b's label-1 node is a's node 0.
  CHECK(p.node_count() == 3);
  CHECK(p.multiplicity(0, 1) == 1);
  CHECK(p.multiplicity(1, 2) == 1);
  CHECK(p.multiplicity(0, 2) == 1);
  CHECK(p.labels() == std::map<NodeId, Label>{{0, 1}, {1, 2}});

  SUBCASE("shared labeled pair adds multiplicities") {
    const LabeledMultigraph e(2, {{0, 1, 1}}, {{0, 1}, {1, 2}});
    CHECK(product(e, e).multiplicity(0, 1) == 2);
    CHECK(product(e, e).node_count() == 2);
  }
  SUBCASE("unlabeled product is the disjoint union") {
    const LabeledMultigraph q = product(complete_graph(3), path_graph(2));
    CHECK(q.node_count() == 5);
    CHECK(q.pair_count() == 4);
    CHECK_FALSE(is_connected(q));
  }
}

TEST_CASE("product is commutative and associative up to isomorphism") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_labeled(rng, 4, 3);
    const auto b = random_labeled(rng, 4, 3);
    const auto c = random_labeled(rng, 3, 3);
    CHECK(are_isomorphic(product(a, b), product(b, a)));
    CHECK(are_isomorphic(product(product(a, b), c), product(a, product(b, c))));
    CHECK(product(a, b).total_multiplicity() == a.total_multiplicity() + b.total_multiplicity());
  }
}

TEST_CASE("isomorphism respects labels") {
  const LabeledMultigraph left(3, {{0, 1, 1}, {1, 2, 1}}, {{0, 1}});
  const LabeledMultigraph right(3, {{0, 1, 1}, {1, 2, 1}}, {{2, 1}});
  const LabeledMultigraph middle(3, {{0, 1, 1}, {1, 2, 1}}, {{1, 1}});
  CHECK(are_isomorphic(left, right));
  CHECK_FALSE(are_isomorphic(left, middle));
  CHECK_FALSE(are_isomorphic(unlabel(left), LabeledMultigraph(3, {{0, 1, 2}})));
  CHECK_FALSE(are_isomorphic(LabeledMultigraph(2, {{0, 1, 2}}), LabeledMultigraph(2, {{0, 1, 1}})));
}

TEST_CASE("subdivision") {
  const LabeledMultigraph g(2, {{0, 1, 2}}, {{0, 1}, {1, 2}});
  const LabeledMultigraph s = subdivide_edge(g, 0, 1, 2);
  CHECK(s.node_count() == 4);
  CHECK(s.multiplicity(0, 1) == 1);
  CHECK(s.multiplicity(0, 2) == 1);
  CHECK(s.multiplicity(2, 3) == 1);
  CHECK(s.multiplicity(3, 1) == 1);
  CHECK(s.labels() == g.labels());
  CHECK(subdivide_edge(g, 1, 0, 0) == g);
  CHECK_THROWS_AS(subdivide_edge(path_graph(3), 0, 2, 1), InvalidArgument);

  // Subdividing an edge of a simple graph k-1 times gives the path it sits on.
  for (std::size_t k = 1; k <= 6; ++k)
    CHECK(are_isomorphic(subdivide_edge(path_graph(2), 0, 1, k - 1), path_graph(k + 1)));
  // Subdividing any edge of a cycle lengthens the cycle.
  CHECK(are_isomorphic(subdivide_edge(cycle_graph(4), 1, 2, 3), cycle_graph(7)));
}

TEST_CASE("edge power and stars") {
  const LabeledMultigraph p = edge_power(cycle_graph(4), 3);
  CHECK(p.total_multiplicity() == 12);
  CHECK(p.pair_count() == 4);
  CHECK(edge_power(cycle_graph(4), 1) == cycle_graph(4));
  CHECK_THROWS_AS(edge_power(cycle_graph(4), 0), InvalidArgument);

  const LabeledMultigraph s = star_multigraph({2, 0, 1});
  CHECK(s.node_count() == 4);
  CHECK_FALSE(s.label_of(0));
  CHECK(s.label_of(1) == 1u);
  CHECK(s.label_of(2) == 2u);
  CHECK(s.multiplicity(0, 1) == 2);
  CHECK(s.multiplicity(0, 2) == 0);
  CHECK(s.multiplicity(0, 3) == 1);
  CHECK_THROWS_AS(star_multigraph({0, 0}), InvalidArgument);
}

TEST_CASE("enumeration counts connected classes") {
  CHECK(enumerate_simple_graphs(2).size() == 1);
  CHECK(enumerate_simple_graphs(3).size() == 3);
  CHECK(enumerate_simple_graphs(4).size() == 9);

  std::size_t expected = 0;
  for (std::size_t n = 2; n <= 5; ++n) expected += oracle::count_connected_classes(n);
  CHECK(enumerate_simple_graphs(5).size() == expected);
  // Published counts of connected graphs on 6 and 7 nodes: 112 and 853.
  CHECK(enumerate_simple_graphs(7).size() == expected + 112 + 853);
  CHECK_THROWS_AS(enumerate_simple_graphs(8), LimitExceeded);
  CHECK(enumerate_simple_graphs(8, 8).size() == expected + 112 + 853 + 11117);
}

TEST_CASE("enumeration has no isomorphic pairs and is ordered") {
  const auto all = enumerate_simple_graphs(6);
  std::set<std::pair<std::size_t, std::uint64_t>> seen;
  for (const auto& g : all) {
    CHECK(is_connected(g));
    CHECK(g.is_simple());
    CHECK_FALSE(g.is_labeled());
    if (g.node_count() <= 5) CHECK(seen.insert(oracle::brute_canonical(g)).second);
  }
  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto key = [](const LabeledMultigraph& g) { return std::pair(g.node_count(), g.pair_count()); };
    CHECK(key(all[i - 1]) <= key(all[i]));
  }
  CHECK(all.front() == complete_graph(2));
}

TEST_CASE("canonical code agrees with brute force") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 5;
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = u + 1; v < n; ++v)
        if (rng() % 2) edges.push_back({u, v, 1});
    const LabeledMultigraph g(n, edges);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> moved;
    for (const auto& e : edges) moved.push_back({perm[e.u], perm[e.v], 1});
    const LabeledMultigraph h(n, moved);
    CHECK(canonical_code(g) == canonical_code(h));
    CHECK(are_isomorphic(g, h));
  }
  CHECK(canonical_code(path_graph(4)) != canonical_code(LabeledMultigraph(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}})));
}

TEST_CASE("text format round trip") {
  const LabeledMultigraph g(4, {{0, 1, 1}, {1, 2, 3}, {0, 3, 1}}, {{2, 7}, {0, 1}});
  const std::string text = format_graph(g);
  CHECK(text == "4 3\n0 1\n0 3\n1 2 3\nlabel 0 1\nlabel 2 7\n");
  CHECK(parse_graph(text) == g);
  CHECK(parse_graph("\n2 1\n\n0 1\n") == complete_graph(2));
  CHECK(describe(g) == "4:0-1;0-3;1-2x3;L0=1;L2=7");
  for (const auto& [name, f] : corpus::graphs()) CHECK(parse_graph(format_graph(f)) == f);
}

TEST_CASE("parse errors are classified") {
  const auto kind_of = [](std::string_view text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.kind();
    }
    FAIL("no error for: " << text);
    return ParseError::Kind::Malformed;
  };
  CHECK(kind_of("") == ParseError::Kind::Malformed);
  CHECK(kind_of("2 1\n0 x\n") == ParseError::Kind::Malformed);
  CHECK(kind_of("2 2\n0 1\n") == ParseError::Kind::Malformed);
  CHECK(kind_of("2 1\n0 1 0\n") == ParseError::Kind::Malformed);
  CHECK(kind_of("2 1\n1 1\n") == ParseError::Kind::Loop);
  CHECK(kind_of("2 1\n0 2\n") == ParseError::Kind::NodeOutOfRange);
  CHECK(kind_of("2 1\n0 1\nlabel 0 3\nlabel 1 3\n") == ParseError::Kind::DuplicateLabel);
  CHECK(kind_of("2 1\n0 1\nlabel 0 3\nlabel 0 4\n") == ParseError::Kind::DuplicateLabel);
  CHECK(kind_of("2 1\n0 1\nlabel 5 3\n") == ParseError::Kind::NodeOutOfRange);
  CHECK(kind_of("2 1\n0 1\ntag 0 3\n") == ParseError::Kind::Malformed);

  try {
    parse_graph("3 2\n0 1\n2 2\n");
    FAIL("expected error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}
