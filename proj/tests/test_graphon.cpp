#include <doctest.h>

#include <cmath>

#include "corpus.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/graphon.hpp"

using namespace graphlim;

namespace {

Rational q(const char* s) { return parse_rational(s); }

InvalidGraphon::Kind kind_of(std::vector<Rational> w, RationalMatrix v, ValueRange r = {}) {
  try {
    StepGraphon h(std::move(w), std::move(v), std::move(r));
  } catch (const InvalidGraphon& e) {
    return e.kind();
  }
  FAIL("graphon was accepted");
  return InvalidGraphon::Kind::Domain;
}

}  // namespace

TEST_CASE("validation reports the failed invariant") {
  using K = InvalidGraphon::Kind;
  CHECK(kind_of({}, {}) == K::Shape);
  CHECK(kind_of({1}, {{0, 0}}) == K::Shape);
  CHECK(kind_of({q("1/2"), q("1/2")}, {{0, 1}}) == K::Shape);
  CHECK(kind_of({q("3/2"), q("-1/2")}, {{0, 0}, {0, 0}}) == K::NegativeWeight);
  CHECK(kind_of({q("1/2"), q("1/3")}, {{0, 0}, {0, 0}}) == K::WeightSum);
  CHECK(kind_of({q("1/2"), q("1/2")}, {{0, 1}, {q("1/2"), 0}}) == K::Asymmetric);
  CHECK(kind_of({1}, {{q("3/2")}}) == K::OutOfRange);
  CHECK(kind_of({1}, {{q("-1/2")}}) == K::OutOfRange);
  CHECK(kind_of({1}, {{0}}, {1, 0}) == K::BadRange);
  CHECK_NOTHROW(StepGraphon({1}, {{q("-1/2")}}, {-1, 1}));
  CHECK_NOTHROW(StepGraphon({0, 1}, {{0, 0}, {0, 0}}));
}

TEST_CASE("block intervals follow exact cumulative weights") {
  const StepGraphon h({q("1/3"), q("1/3"), q("1/3")}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  CHECK(h.block_at(0.0) == 0);
  CHECK(h.block_at(0.3333333333333333) == 0);  // just below 1/3
  CHECK(h.block_at(0.33333333333333337) == 1);  // first double above 1/3
  CHECK(h.block_at(0.6666666666666666) == 1);  // below 2/3
  CHECK(h.block_at(std::nextafter(1.0, 0.0)) == 2);
  CHECK_THROWS_AS(h.block_at(1.0), InvalidGraphon);
  CHECK_THROWS_AS(h.block_at(-0.25), InvalidGraphon);

  const StepGraphon z({q("1/2"), 0, q("1/2")}, {{0, 0, 1}, {0, 0, 0}, {1, 0, 0}});
  CHECK(z.block_at(0.5) == 2);  // zero-weight block owns no point
  CHECK(z.block_at(0.49) == 0);
  CHECK(evaluate(z, 0.1, 0.9) == 1);
  CHECK(evaluate(z, 0.9, 0.9) == 0);
}

TEST_CASE("from_graph and constant") {
  const StepGraphon k3 = from_graph(complete_graph(3));
  CHECK(k3 == corpus::graphon("triangle"));
  CHECK_THROWS_AS(from_graph(LabeledMultigraph(2, {{0, 1, 2}})), InvalidArgument);
  CHECK_THROWS_AS(from_graph(LabeledMultigraph(2, {{0, 1, 1}}, {{0, 1}})), InvalidArgument);
  CHECK(constant(q("1/2")) == corpus::graphon("half"));
  CHECK_THROWS_AS(constant(2), InvalidGraphon);
}

TEST_CASE("blowup layout") {
  const StepGraphon h = corpus::graphon("sbm3");
  const StepGraphon b = blowup(h, 3);
  REQUIRE(b.block_count() == 9);
  for (std::size_t c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(b.weight(c * 3 + i) == h.weight(i) / 3);
      for (std::size_t d = 0; d < 3; ++d)
        for (std::size_t j = 0; j < 3; ++j) CHECK(b.value(c * 3 + i, d * 3 + j) == h.value(i, j));
    }
  CHECK(blowup(h, 1) == h);
  CHECK_THROWS_AS(blowup(h, 0), InvalidArgument);

  // Pulling back along x -> 3x mod 1: W_b(x, y) = W(3x mod 1, 3y mod 1) at sample points.
  for (double x : {0.01, 0.2, 0.31, 0.45, 0.62, 0.9})
    for (double y : {0.05, 0.3, 0.5, 0.77, 0.99})
      CHECK(evaluate(b, x, y) == evaluate(h, std::fmod(3 * x, 1.0), std::fmod(3 * y, 1.0)));
}

TEST_CASE("affine rescale and permutation") {
  const StepGraphon h = corpus::graphon("sbm3");
  const StepGraphon s = affine_rescale(h, 2, -1);
  CHECK(s.range() == ValueRange{-1, 1});
  CHECK(s.value(0, 1) == q("-1/2"));
  const StepGraphon flipped = affine_rescale(h, -1, 1);
  CHECK(flipped.range() == ValueRange{0, 1});
  CHECK(flipped.value(0, 0) == q("1/4"));
  CHECK_THROWS_AS(affine_rescale(h, 0, 1), InvalidArgument);
  CHECK(affine_rescale(affine_rescale(h, 2, -1), q("1/2"), q("1/2")) == h);

  const StepGraphon p = permute_blocks(h, {2, 0, 1});
  CHECK(p.weight(0) == h.weight(2));
  CHECK(p.value(0, 1) == h.value(2, 0));
  CHECK_THROWS_AS(permute_blocks(h, {0, 0, 1}), InvalidArgument);
  CHECK_THROWS_AS(permute_blocks(h, {0, 1}), InvalidArgument);
}

TEST_CASE("black-box kernel agrees with exact evaluation") {
  const StepGraphon h = corpus::graphon("mixed6");
  const BlackBoxKernel k = as_kernel(h);
  for (double x = 0.0; x < 1.0; x += 0.037)
    for (double y = 0.0; y < 1.0; y += 0.041) CHECK(k.evaluator(x, y) == evaluate(h, x, y).get_d());
  CHECK(k.bound == 1.0);
  CHECK(as_kernel(corpus::graphon("signed")).bound == 1.0);
}

TEST_CASE("JSON round trip and errors") {
  for (const auto& [name, h] : corpus::graphons()) {
    INFO(name);
    CHECK(parse_graphon(format_graphon(h)) == h);
  }
  CHECK(format_graphon(corpus::graphon("half")) ==
        "{\"weights\":[\"1\"],\"values\":[[\"1/2\"]],\"range\":[\"0\",\"1\"]}\n");
  CHECK(parse_graphon(R"({"weights":[1],"values":[["1/2"]]})") == constant(q("1/2")));
  CHECK_THROWS_AS(parse_graphon("{"), InvalidArgument);
  CHECK_THROWS_AS(parse_graphon(R"({"weights":["1"]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_graphon(R"({"weights":["1"],"values":[["0.5"]]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_graphon(R"({"weights":["1"],"values":[["1/2"]],"range":["0"]})"), InvalidArgument);
  CHECK_THROWS_AS(parse_graphon(R"({"weights":["1/2"],"values":[["1/2"]]})"), InvalidGraphon);
}
