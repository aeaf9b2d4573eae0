#include "graphlim/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "graphlim/density.hpp"
#include "graphlim/errors.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

BlockPartition::BlockPartition(std::vector<std::size_t> class_of) : class_of_(std::move(class_of)) {
  if (class_of_.empty()) throw InvalidArgument("partition of zero blocks");
  const std::size_t top = *std::max_element(class_of_.begin(), class_of_.end());
  std::vector<bool> used(top + 1, false);
  for (std::size_t c : class_of_) used[c] = true;
  if (std::find(used.begin(), used.end(), false) != used.end())
    throw InvalidArgument("partition class ids must be contiguous from 0");
  classes_ = top + 1;
}

BlockPartition twin_partition(const StepGraphon& h) {
  const std::size_t n = h.block_count();
  std::vector<std::vector<Rational>> rows(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(h.weight(j)) > 0) rows[i].push_back(h.value(i, j));
  return BlockPartition::grouping(rows);
}

StepGraphon quotient(const StepGraphon& h, const BlockPartition& p) {
  if (p.block_count() != h.block_count()) throw InvalidArgument("partition does not match the block count");
  const std::size_t c = p.class_count();
  std::vector<Rational> mass(c, Rational(0));
  for (std::size_t i = 0; i < h.block_count(); ++i) mass[p.class_of(i)] += h.weight(i);

  RationalMatrix integral(c, std::vector<Rational>(c, Rational(0)));
  for (std::size_t i = 0; i < h.block_count(); ++i)
    for (std::size_t j = 0; j < h.block_count(); ++j)
      integral[p.class_of(i)][p.class_of(j)] += h.weight(i) * h.weight(j) * h.value(i, j);

  std::vector<std::size_t> kept;
  for (std::size_t s = 0; s < c; ++s)
    if (sgn(mass[s]) > 0) kept.push_back(s);
  std::vector<Rational> weights;
  RationalMatrix values(kept.size(), std::vector<Rational>(kept.size()));
  for (std::size_t a = 0; a < kept.size(); ++a) {
    weights.push_back(mass[kept[a]]);
    for (std::size_t b = 0; b < kept.size(); ++b)
      values[a][b] = integral[kept[a]][kept[b]] / (mass[kept[a]] * mass[kept[b]]);
  }
  return {std::move(weights), std::move(values), h.range()};
}

TwinReduction reduce_twins(const StepGraphon& h) {
  std::vector<std::size_t> positive;
  for (std::size_t i = 0; i < h.block_count(); ++i)
    if (sgn(h.weight(i)) > 0) positive.push_back(i);

  std::vector<Rational> weights;
  RationalMatrix values(positive.size(), std::vector<Rational>(positive.size()));
  for (std::size_t a = 0; a < positive.size(); ++a) {
    weights.push_back(h.weight(positive[a]));
    for (std::size_t b = 0; b < positive.size(); ++b) values[a][b] = h.value(positive[a], positive[b]);
  }
  const StepGraphon support(std::move(weights), std::move(values), h.range());
  const BlockPartition twins = twin_partition(support);

  BlockMap map(h.block_count());
  for (std::size_t a = 0; a < positive.size(); ++a) map[positive[a]] = twins.class_of(a);
  return {quotient(support, twins), std::move(map)};
}

StepGraphon twin_reduce(const StepGraphon& h) { return reduce_twins(h).reduced; }

AnchorTags anchor_tags(const StepGraphon& h, const std::vector<std::size_t>& anchors) {
  for (std::size_t a : anchors)
    if (a >= h.block_count()) throw InvalidArgument("anchor block " + std::to_string(a) + " out of range");
  std::vector<std::vector<Rational>> tags(h.block_count());
  for (std::size_t b = 0; b < h.block_count(); ++b)
    for (std::size_t a : anchors) tags[b].push_back(h.value(b, a));
  BlockPartition partition = BlockPartition::grouping(tags);
  return {std::move(tags), std::move(partition)};
}

std::vector<std::size_t> random_anchors(const StepGraphon& h, std::size_t m, std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, {kAnchorDomain}));
  std::vector<std::size_t> out;
  out.reserve(m);
  for (std::size_t i = 0; i < m; ++i) out.push_back(h.block_at(rng.uniform()));
  return out;
}

StepGraphon anchored_quotient(const StepGraphon& h, const std::vector<std::size_t>& anchors) {
  return quotient(h, anchor_tags(h, anchors).partition);
}

namespace {

using Signature = std::pair<Rational, std::vector<std::pair<Rational, Rational>>>;

// Weight plus the sorted multiset of (value, column weight) pairs in the row.
Signature block_signature(const StepGraphon& h, std::size_t i) {
  std::vector<std::pair<Rational, Rational>> row;
  for (std::size_t j = 0; j < h.block_count(); ++j) row.emplace_back(h.value(i, j), h.weight(j));
  std::sort(row.begin(), row.end());
  return {h.weight(i), std::move(row)};
}

struct Matcher {
  const StepGraphon& a;
  const StepGraphon& b;
  std::vector<std::size_t> order;                   // blocks of a, canonical order
  std::vector<std::vector<std::size_t>> candidates;  // per position in order
  std::vector<std::size_t> image;
  std::vector<bool> used;

  bool extend(std::size_t pos) {
    if (pos == order.size()) return true;
    const std::size_t i = order[pos];
    for (std::size_t j : candidates[pos]) {
      if (used[j] || a.value(i, i) != b.value(j, j)) continue;
      bool ok = true;
      for (std::size_t q = 0; q < pos && ok; ++q) ok = a.value(order[q], i) == b.value(image[order[q]], j);
      if (!ok) continue;
      image[i] = j;
      used[j] = true;
      if (extend(pos + 1)) return true;
      used[j] = false;
    }
    return false;
  }
};

std::vector<Rational> sorted_weights(const StepGraphon& h) {
  std::vector<Rational> w = h.weights();
  std::sort(w.begin(), w.end());
  return w;
}

std::vector<Rational> sorted_values(const StepGraphon& h) {
  std::vector<Rational> v;
  for (const auto& row : h.values()) v.insert(v.end(), row.begin(), row.end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

std::optional<std::vector<std::size_t>> find_block_isomorphism(const StepGraphon& a, const StepGraphon& b) {
  const std::size_t n = a.block_count();
  if (b.block_count() != n) return std::nullopt;

  std::vector<Signature> sig_a, sig_b;
  for (std::size_t i = 0; i < n; ++i) {
    sig_a.push_back(block_signature(a, i));
    sig_b.push_back(block_signature(b, i));
  }
  Matcher m{a, b, std::vector<std::size_t>(n), {}, std::vector<std::size_t>(n), std::vector<bool>(n, false)};
  std::iota(m.order.begin(), m.order.end(), std::size_t{0});
  std::stable_sort(m.order.begin(), m.order.end(), [&](std::size_t x, std::size_t y) { return sig_a[x] < sig_a[y]; });
  for (std::size_t i : m.order) {
    auto& cand = m.candidates.emplace_back();
    for (std::size_t j = 0; j < n; ++j)
      if (sig_b[j] == sig_a[i]) cand.push_back(j);
    if (cand.empty()) return std::nullopt;
  }
  if (!m.extend(0)) return std::nullopt;
  return m.image;
}

WeakIsoVerdict weak_iso(const StepGraphon& h1, const StepGraphon& h2) {
  StepGraphon r1 = twin_reduce(h1);
  StepGraphon r2 = twin_reduce(h2);
  auto verdict = [&](auto outcome) { return WeakIsoVerdict{std::move(outcome), r1, r2}; };

  if (r1.block_count() != r2.block_count())
    return verdict(NotIsomorphic{WitnessKind::BlockCount,
                                 "reduced forms have " + std::to_string(r1.block_count()) + " and " +
                                     std::to_string(r2.block_count()) + " blocks",
                                 std::nullopt});
  if (sorted_weights(r1) != sorted_weights(r2))
    return verdict(NotIsomorphic{WitnessKind::WeightMultiset, "block weight multisets differ", std::nullopt});
  if (sorted_values(r1) != sorted_values(r2))
    return verdict(NotIsomorphic{WitnessKind::ValueMultiset, "value multisets differ", std::nullopt});
  if (auto bijection = find_block_isomorphism(r1, r2)) return verdict(Isomorphic{std::move(*bijection)});
  return verdict(NotIsomorphic{WitnessKind::SearchExhausted, "no weight- and value-preserving block bijection",
                               std::nullopt});
}

std::optional<LabeledMultigraph> find_distinguishing_graph(const StepGraphon& h1, const StepGraphon& h2,
                                                           std::size_t max_nodes) {
  for (const LabeledMultigraph& f : enumerate_simple_graphs(max_nodes))
    if (density_exact(f, h1).exact_value() != density_exact(f, h2).exact_value()) return f;
  return std::nullopt;
}

std::optional<CommonQuotient> common_quotient(const StepGraphon& h1, const StepGraphon& h2) {
  const WeakIsoVerdict v = weak_iso(h1, h2);
  if (!v.is_isomorphic()) return std::nullopt;
  const auto& bijection = std::get<Isomorphic>(v.outcome).bijection;
  std::vector<std::size_t> inverse(bijection.size());
  for (std::size_t i = 0; i < bijection.size(); ++i) inverse[bijection[i]] = i;

  TwinReduction red1 = reduce_twins(h1);
  TwinReduction red2 = reduce_twins(h2);
  BlockMap map2(h2.block_count());
  for (std::size_t j = 0; j < h2.block_count(); ++j)
    if (red2.class_of_block[j]) map2[j] = inverse[*red2.class_of_block[j]];
  return CommonQuotient{std::move(red1.reduced), std::move(red1.class_of_block), std::move(map2)};
}

std::optional<CouplingMatrix> build_coupling(const StepGraphon& h1, const StepGraphon& h2) {
  auto cq = common_quotient(h1, h2);
  if (!cq) return std::nullopt;
  CouplingMatrix out;
  out.masses.assign(h1.block_count(), std::vector<Rational>(h2.block_count(), Rational(0)));
  for (std::size_t i = 0; i < h1.block_count(); ++i) {
    if (!cq->map1[i]) continue;
    const std::size_t c = *cq->map1[i];
    for (std::size_t j = 0; j < h2.block_count(); ++j)
      if (cq->map2[j] == c) out.masses[i][j] = h1.weight(i) * h2.weight(j) / cq->common.weight(c);
  }
  return out;
}

std::string format_coupling(const CouplingMatrix& c) {
  nlohmann::ordered_json doc;
  doc["rows"] = c.rows();
  doc["cols"] = c.cols();
  auto& masses = doc["masses"] = nlohmann::ordered_json::array();
  for (const auto& row : c.masses) {
    auto out = nlohmann::ordered_json::array();
    for (const auto& m : row) out.push_back(to_string(m));
    masses.push_back(std::move(out));
  }
  return doc.dump() + "\n";
}

CouplingMatrix parse_coupling(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("coupling file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("masses"))
    throw InvalidArgument("coupling file needs \"rows\", \"cols\" and \"masses\"");
  const auto rows = doc["rows"].get<std::size_t>();
  const auto cols = doc["cols"].get<std::size_t>();
  CouplingMatrix out;
  for (const auto& row : doc["masses"]) {
    auto& r = out.masses.emplace_back();
    for (const auto& m : row) {
      if (!m.is_string()) throw InvalidArgument("coupling masses must be rational strings");
      r.push_back(parse_rational(m.get<std::string>()));
    }
    if (r.size() != cols) throw InvalidArgument("coupling row has wrong length");
  }
  if (out.masses.size() != rows) throw InvalidArgument("coupling has wrong number of rows");
  return out;
}

BlockPartition parse_partition(std::string_view text) {
  std::vector<std::size_t> ids;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    try {
      const auto doc = nlohmann::json::parse(text);
      ids = doc.at("class_of").get<std::vector<std::size_t>>();
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("bad partition file: ") + e.what());
    }
  } else {
    std::string item;
    std::istringstream in{std::string(text)};
    while (std::getline(in, item, ',')) {
      const auto a = item.find_first_not_of(" \t\r\n");
      const auto b = item.find_last_not_of(" \t\r\n");
      if (a == std::string::npos) throw InvalidArgument("empty entry in partition list");
      const std::string tok = item.substr(a, b - a + 1);
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidArgument("bad class id '" + tok + "'");
      ids.push_back(std::stoul(tok));
    }
  }
  return BlockPartition(std::move(ids));
}

std::string format_verdict(const WeakIsoVerdict& v) {
  std::ostringstream out;
  if (const auto* iso = std::get_if<Isomorphic>(&v.outcome)) {
    out << "Isomorphic\nbijection:";
    for (std::size_t i = 0; i < iso->bijection.size(); ++i) out << ' ' << i << "->" << iso->bijection[i];
    out << "\nreduced form: " << format_graphon(v.reduced1);
  } else {
    const auto& no = std::get<NotIsomorphic>(v.outcome);
    out << "NotIsomorphic: " << no.description << '\n';
    if (no.distinguisher) out << "distinguisher:\n" << format_graph(*no.distinguisher);
  }
  return out.str();
}

}  // namespace graphlim
