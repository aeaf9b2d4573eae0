#include "graphlim/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <json.hpp>

#include "graphlim/errors.hpp"

namespace graphlim {

void validate(const std::vector<Rational>& weights, const RationalMatrix& values, const ValueRange& range) {
  using Kind = InvalidGraphon::Kind;
  const std::size_t n = weights.size();
  if (n == 0) throw InvalidGraphon(Kind::Shape, "graphon needs at least one block");
  if (values.size() != n)
    throw InvalidGraphon(Kind::Shape, "values has " + std::to_string(values.size()) + " rows, expected " +
                                          std::to_string(n));
  for (std::size_t i = 0; i < n; ++i)
    if (values[i].size() != n)
      throw InvalidGraphon(Kind::Shape, "values row " + std::to_string(i) + " has wrong length");
  if (range.lo > range.hi) throw InvalidGraphon(Kind::BadRange, "range lower bound exceeds upper bound");

  Rational sum = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(weights[i]) < 0)
      throw InvalidGraphon(Kind::NegativeWeight, "weight " + std::to_string(i) + " is negative");
    sum += weights[i];
  }
  if (sum != 1) throw InvalidGraphon(Kind::WeightSum, "weights sum to " + to_string(sum) + ", not 1");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (values[i][j] != values[j][i])
        throw InvalidGraphon(Kind::Asymmetric, "values[" + std::to_string(i) + "][" + std::to_string(j) +
                                                   "] != values[" + std::to_string(j) + "][" +
                                                   std::to_string(i) + "]");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (values[i][j] < range.lo || values[i][j] > range.hi)
        throw InvalidGraphon(Kind::OutOfRange, "value " + to_string(values[i][j]) + " outside [" +
                                                   to_string(range.lo) + "," + to_string(range.hi) + "]");
}

StepGraphon::StepGraphon(std::vector<Rational> weights, RationalMatrix values, ValueRange range)
    : weights_(std::move(weights)), values_(std::move(values)), range_(std::move(range)) {
  validate(weights_, values_, range_);
  upper_.reserve(weights_.size());
  Rational cumulative = 0;
  for (const Rational& w : weights_) {
    cumulative += w;
    upper_.push_back(ceil_to_double(cumulative));
  }
}

std::size_t StepGraphon::block_at(double x) const {
  if (!(x >= 0.0 && x < 1.0))
    throw InvalidGraphon(InvalidGraphon::Kind::Domain, "coordinate outside [0,1)");
  // First block whose cumulative upper end exceeds x.
  auto it = std::upper_bound(upper_.begin(), upper_.end(), x);
  return static_cast<std::size_t>(it - upper_.begin());
}

StepGraphon from_graph(const LabeledMultigraph& g) {
  if (!g.is_simple()) throw InvalidArgument("from_graph needs a simple graph");
  if (g.is_labeled()) throw InvalidArgument("from_graph needs an unlabeled graph");
  const std::size_t n = g.node_count();
  RationalMatrix values(n, std::vector<Rational>(n, Rational(0)));
  for (const Edge& e : g.edges()) values[e.u][e.v] = values[e.v][e.u] = 1;
  return {std::vector<Rational>(n, Rational(1, n)), std::move(values)};
}

StepGraphon constant(const Rational& c, ValueRange range) {
  return {{Rational(1)}, {{c}}, std::move(range)};
}

StepGraphon blowup(const StepGraphon& h, unsigned k) {
  if (k == 0) throw InvalidArgument("blowup factor must be positive");
  const std::size_t n = h.block_count();
  const std::size_t m = n * k;
  std::vector<Rational> weights(m);
  RationalMatrix values(m, std::vector<Rational>(m));
  for (std::size_t a = 0; a < m; ++a) {
    weights[a] = h.weight(a % n) / k;
    for (std::size_t b = 0; b < m; ++b) values[a][b] = h.value(a % n, b % n);
  }
  return {std::move(weights), std::move(values), h.range()};
}

StepGraphon affine_rescale(const StepGraphon& h, const Rational& a, const Rational& b) {
  if (a == 0) throw InvalidArgument("affine rescale needs a nonzero slope");
  RationalMatrix values = h.values();
  for (auto& row : values)
    for (auto& v : row) v = a * v + b;
  Rational lo = a * h.range().lo + b;
  Rational hi = a * h.range().hi + b;
  if (lo > hi) std::swap(lo, hi);
  return {h.weights(), std::move(values), {lo, hi}};
}

StepGraphon permute_blocks(const StepGraphon& h, const std::vector<std::size_t>& perm) {
  const std::size_t n = h.block_count();
  std::vector<bool> seen(n, false);
  if (perm.size() != n) throw InvalidArgument("permutation has wrong length");
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw InvalidArgument("not a permutation of the blocks");
    seen[p] = true;
  }
  std::vector<Rational> weights(n);
  RationalMatrix values(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) {
    weights[i] = h.weight(perm[i]);
    for (std::size_t j = 0; j < n; ++j) values[i][j] = h.value(perm[i], perm[j]);
  }
  return {std::move(weights), std::move(values), h.range()};
}

Rational evaluate(const StepGraphon& h, double x, double y) { return h.value(h.block_at(x), h.block_at(y)); }

BlackBoxKernel as_kernel(const StepGraphon& h) {
  const std::size_t n = h.block_count();
  auto table = std::make_shared<std::vector<double>>(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) (*table)[i * n + j] = h.value(i, j).get_d();
  const double bound = std::max(std::fabs(h.range().lo.get_d()), std::fabs(h.range().hi.get_d()));
  return {[h, table, n](double x, double y) { return (*table)[h.block_at(x) * n + h.block_at(y)]; }, bound};
}

namespace {

Rational rational_field(const nlohmann::json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InvalidArgument("expected a rational string \"p/q\"");
}

}  // namespace

StepGraphon parse_graphon(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("graphon file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("weights") || !doc.contains("values"))
    throw InvalidArgument("graphon file needs \"weights\" and \"values\"");
  if (!doc["weights"].is_array() || !doc["values"].is_array())
    throw InvalidArgument("\"weights\" and \"values\" must be arrays");

  std::vector<Rational> weights;
  for (const auto& w : doc["weights"]) weights.push_back(rational_field(w));
  RationalMatrix values;
  for (const auto& row : doc["values"]) {
    if (!row.is_array()) throw InvalidArgument("\"values\" must be an array of arrays");
    auto& out = values.emplace_back();
    for (const auto& v : row) out.push_back(rational_field(v));
  }
  ValueRange range;
  if (doc.contains("range")) {
    const auto& r = doc["range"];
    if (!r.is_array() || r.size() != 2) throw InvalidArgument("\"range\" must be [lo, hi]");
    range = {rational_field(r[0]), rational_field(r[1])};
  }
  return {std::move(weights), std::move(values), std::move(range)};
}

std::string format_graphon(const StepGraphon& h) {
  nlohmann::ordered_json doc;
  auto& weights = doc["weights"] = nlohmann::ordered_json::array();
  for (const Rational& w : h.weights()) weights.push_back(to_string(w));
  auto& values = doc["values"] = nlohmann::ordered_json::array();
  const std::size_t n = h.block_count();
  for (std::size_t i = 0; i < n; ++i) {
    auto row = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < n; ++j) row.push_back(to_string(j <= i ? h.value(i, j) : h.value(j, i)));
    values.push_back(std::move(row));
  }
  doc["range"] = {to_string(h.range().lo), to_string(h.range().hi)};
  return doc.dump() + "\n";
}

}  // namespace graphlim
