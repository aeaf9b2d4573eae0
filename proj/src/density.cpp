#include "graphlim/density.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <thread>

#include "graphlim/errors.hpp"
#include "graphlim/rng.hpp"

namespace graphlim {

std::string DensityValue::to_string() const {
  if (is_exact()) return graphlim::to_string(exact_value());
  const Estimate& e = estimate_value();
  return format_real(e.mean) + " ± " + format_real(e.standard_error) + " (" + std::to_string(e.samples) + ")";
}

namespace {

__extension__ typedef unsigned __int128 u128;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) return UINT64_MAX;
  return out;
}

mpz_class lcm_of_denominators(const std::vector<const Rational*>& xs) {
  mpz_class l = 1;
  for (const Rational* x : xs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x->get_den_mpz_t());
  return l;
}

// Sum over block maps of a multigraph with some nodes pinned to fixed blocks.
//
// All arithmetic is on integers: weights are scaled by a common denominator Dw
// and values by Dv, so every term shares the denominator Dw^free * Dv^mult.
// Free nodes form a core, enumerated by nested loops in node order with
// pruning on zero partial products, and a trailing independent set whose
// members depend only on core and pinned blocks; each of those contributes a
// factor sum_b w_b prod W(., b)^m computed at the leaf.
class HomSum {
 public:
  HomSum(const LabeledMultigraph& f, const StepGraphon& h, std::vector<std::optional<std::size_t>> pinned,
         const DensityLimits& limits)
      : n_(h.block_count()), block_(f.node_count()) {
    if (f.node_count() > limits.max_nodes)
      throw LimitExceeded("pattern has " + std::to_string(f.node_count()) + " nodes, limit is " +
                          std::to_string(limits.max_nodes));
    if (n_ > limits.max_blocks)
      throw LimitExceeded("graphon has " + std::to_string(n_) + " blocks, limit is " +
                          std::to_string(limits.max_blocks));

    scale(h);

    const std::size_t nodes = f.node_count();
    std::vector<std::vector<std::pair<NodeId, unsigned>>> adj(nodes);
    for (const Edge& e : f.edges()) {
      adj[e.u].emplace_back(e.v, e.mult);
      adj[e.v].emplace_back(e.u, e.mult);
      total_mult_ += e.mult;
      if (!powers_.count(e.mult)) {
        auto& table = powers_[e.mult];
        table.resize(n_ * n_);
        for (std::size_t k = 0; k < n_ * n_; ++k) mpz_pow_ui(table[k].get_mpz_t(), value_[k].get_mpz_t(), e.mult);
      }
    }

    std::vector<NodeId> free;
    for (NodeId v = 0; v < nodes; ++v) {
      if (pinned[v]) {
        block_[v] = *pinned[v];
      } else {
        free.push_back(v);
      }
    }
    free_count_ = free.size();

    // Greedy independent set among free nodes, lowest free-degree first.
    auto free_degree = [&](NodeId v) {
      return std::count_if(adj[v].begin(), adj[v].end(), [&](const auto& p) { return !pinned[p.first]; });
    };
    std::vector<NodeId> by_degree = free;
    std::stable_sort(by_degree.begin(), by_degree.end(),
                     [&](NodeId a, NodeId b) { return free_degree(a) < free_degree(b); });
    std::vector<bool> trailing(nodes, false);
    for (NodeId v : by_degree) {
      const bool blocked = std::any_of(adj[v].begin(), adj[v].end(), [&](const auto& p) { return trailing[p.first]; });
      if (!blocked) trailing[v] = true;
    }

    std::vector<bool> placed(nodes, false);
    for (NodeId v = 0; v < nodes; ++v) placed[v] = pinned[v].has_value();
    for (NodeId v : free) {
      if (trailing[v]) continue;
      Step step{v, {}};
      for (const auto& [u, m] : adj[v])
        if (placed[u]) step.back.emplace_back(u, &powers_.at(m));
      placed[v] = true;
      core_.push_back(std::move(step));
    }
    for (NodeId v : free) {
      if (!trailing[v]) continue;
      Step step{v, {}};
      for (const auto& [u, m] : adj[v]) step.back.emplace_back(u, &powers_.at(m));
      tail_.push_back(std::move(step));
    }

    std::uint64_t positive_blocks = 0;
    for (const auto& w : weight_) positive_blocks += sgn(w) > 0;
    std::uint64_t work = 1;
    for (std::size_t i = 0; i < core_.size(); ++i) work = saturating_mul(work, positive_blocks);
    work = saturating_mul(work, 1 + tail_.size() * n_);
    if (work > limits.max_work)
      throw LimitExceeded("exact evaluation needs ~" + std::to_string(work) + " steps, limit is " +
                          std::to_string(limits.max_work));

    // Edges between pinned nodes give a constant factor.
    partial_.resize(core_.size() + 1);
    partial_[0] = 1;
    for (const Edge& e : f.edges())
      if (pinned[e.u] && pinned[e.v]) partial_[0] *= powers_[e.mult][block_[e.u] * n_ + block_[e.v]];
  }

  Rational run() {
    sum_ = 0;
    if (partial_[0] != 0) descend(0);
    mpz_class den;
    mpz_pow_ui(den.get_mpz_t(), weight_den_.get_mpz_t(), free_count_);
    mpz_class vden;
    mpz_pow_ui(vden.get_mpz_t(), value_den_.get_mpz_t(), total_mult_);
    den *= vden;
    Rational out(sum_, den);
    out.canonicalize();
    return out;
  }

 private:
  struct Step {
    NodeId node;
    // Already-placed neighbors with the power table for the edge multiplicity.
    std::vector<std::pair<NodeId, const std::vector<mpz_class>*>> back;
  };

  void scale(const StepGraphon& h) {
    std::vector<const Rational*> ws, vs;
    for (const auto& w : h.weights()) ws.push_back(&w);
    for (const auto& row : h.values())
      for (const auto& v : row) vs.push_back(&v);
    weight_den_ = lcm_of_denominators(ws);
    value_den_ = lcm_of_denominators(vs);
    for (const auto& w : h.weights()) weight_.push_back(w.get_num() * (weight_den_ / w.get_den()));
    for (const auto& row : h.values())
      for (const auto& v : row) value_.push_back(v.get_num() * (value_den_ / v.get_den()));
  }

  void descend(std::size_t depth) {
    if (depth == core_.size()) {
      leaf();
      return;
    }
    const Step& step = core_[depth];
    mpz_class& out = partial_[depth + 1];
    for (std::size_t b = 0; b < n_; ++b) {
      if (sgn(weight_[b]) == 0) continue;
      mpz_mul(out.get_mpz_t(), partial_[depth].get_mpz_t(), weight_[b].get_mpz_t());
      for (const auto& [u, table] : step.back) {
        mpz_mul(out.get_mpz_t(), out.get_mpz_t(), (*table)[block_[u] * n_ + b].get_mpz_t());
        if (sgn(out) == 0) break;
      }
      if (sgn(out) == 0) continue;
      block_[step.node] = b;
      descend(depth + 1);
    }
  }

  void leaf() {
    prod_ = partial_[core_.size()];
    for (const Step& step : tail_) {
      acc_ = 0;
      for (std::size_t b = 0; b < n_; ++b) {
        if (sgn(weight_[b]) == 0) continue;
        term_ = weight_[b];
        for (const auto& [u, table] : step.back) {
          mpz_mul(term_.get_mpz_t(), term_.get_mpz_t(), (*table)[block_[u] * n_ + b].get_mpz_t());
          if (sgn(term_) == 0) break;
        }
        acc_ += term_;
      }
      if (sgn(acc_) == 0) return;
      prod_ *= acc_;
    }
    sum_ += prod_;
  }

  std::size_t n_;
  std::vector<mpz_class> weight_;
  mpz_class weight_den_;
  std::vector<mpz_class> value_;
  mpz_class value_den_;
  std::map<unsigned, std::vector<mpz_class>> powers_;
  std::uint64_t total_mult_ = 0;
  std::size_t free_count_ = 0;

  std::vector<Step> core_;
  std::vector<Step> tail_;
  std::vector<std::size_t> block_;
  std::vector<mpz_class> partial_;
  mpz_class sum_, prod_, acc_, term_;
};

// Homomorphism counting into a simple graph, one connected component of F at a time.
class HomCount {
 public:
  explicit HomCount(const LabeledMultigraph& g) : n_(g.node_count()), adj_(n_), matrix_(n_ * n_, 0) {
    for (const Edge& e : g.edges()) {
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
      matrix_[e.u * n_ + e.v] = matrix_[e.v * n_ + e.u] = 1;
    }
  }

  // Counts maps of a connected pattern given as a BFS order and, per position,
  // the earlier positions it is adjacent to.
  u128 count(const std::vector<std::vector<std::size_t>>& back) {
    image_.assign(back.size(), 0);
    back_ = &back;
    total_ = 0;
    descend(0);
    return total_;
  }

 private:
  void descend(std::size_t pos) {
    const auto& back = (*back_);
    if (pos == back.size()) {
      ++total_;
      return;
    }
    if (back[pos].empty()) {
      for (std::size_t x = 0; x < n_; ++x) {
        image_[pos] = x;
        descend(pos + 1);
      }
      return;
    }
    const std::size_t anchor = image_[back[pos].front()];
    for (std::size_t x : adj_[anchor]) {
      bool ok = true;
      for (std::size_t k = 1; k < back[pos].size() && ok; ++k) ok = matrix_[image_[back[pos][k]] * n_ + x];
      if (!ok) continue;
      image_[pos] = x;
      if (pos + 1 == back.size()) {
        ++total_;
      } else {
        descend(pos + 1);
      }
    }
  }

  std::size_t n_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<char> matrix_;
  std::vector<std::size_t> image_;
  const std::vector<std::vector<std::size_t>>* back_ = nullptr;
  u128 total_ = 0;
};

mpz_class to_mpz(u128 x) {
  mpz_class hi(static_cast<unsigned long>(x >> 64));
  mpz_class out = hi << 64;
  out += static_cast<unsigned long>(static_cast<std::uint64_t>(x));
  return out;
}

void require_unlabeled(const LabeledMultigraph& f, const char* op) {
  if (f.is_labeled()) throw InvalidArgument(std::string(op) + " needs an unlabeled pattern");
}

}  // namespace

DensityValue density_graph(const LabeledMultigraph& f, const LabeledMultigraph& g, const DensityLimits& limits) {
  require_unlabeled(f, "density_graph");
  if (!g.is_simple() || g.is_labeled()) throw InvalidArgument("density_graph needs a simple unlabeled host graph");
  if (f.node_count() > limits.max_nodes)
    throw LimitExceeded("pattern has " + std::to_string(f.node_count()) + " nodes, limit is " +
                        std::to_string(limits.max_nodes));

  const std::size_t k = f.node_count();
  std::vector<std::vector<NodeId>> fadj(k);
  for (const Edge& e : f.edges()) {
    fadj[e.u].push_back(e.v);
    fadj[e.v].push_back(e.u);
  }

  HomCount counter(g);
  mpz_class homs = 1;
  std::vector<bool> seen(k, false);
  for (NodeId root = 0; root < k && homs != 0; ++root) {
    if (seen[root]) continue;
    // BFS order of this component, with back-neighbors as positions.
    std::vector<NodeId> order{root};
    seen[root] = true;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (NodeId u : fadj[order[i]])
        if (!seen[u]) {
          seen[u] = true;
          order.push_back(u);
        }
    std::vector<std::size_t> position(k, SIZE_MAX);
    for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
    std::vector<std::vector<std::size_t>> back(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (NodeId u : fadj[order[i]])
        if (position[u] < i) back[i].push_back(position[u]);
      std::sort(back[i].begin(), back[i].end());
    }
    homs *= to_mpz(counter.count(back));
  }

  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), g.node_count(), k);
  Rational out(homs, den);
  out.canonicalize();
  return DensityValue::exact(std::move(out));
}

DensityValue density_exact(const LabeledMultigraph& f, const StepGraphon& h, const DensityLimits& limits) {
  require_unlabeled(f, "density_exact");
  HomSum sum(f, h, std::vector<std::optional<std::size_t>>(f.node_count()), limits);
  return DensityValue::exact(sum.run());
}

DensityValue anchored_density(const LabeledMultigraph& f, const StepGraphon& h, const AnchorAssignment& anchors,
                              const DensityLimits& limits) {
  std::vector<std::optional<std::size_t>> pinned(f.node_count());
  for (const auto& [node, label] : f.labels()) {
    auto it = anchors.find(label);
    if (it == anchors.end()) throw InvalidArgument("no anchor for label " + std::to_string(label));
    if (it->second >= h.block_count())
      throw InvalidArgument("anchor block " + std::to_string(it->second) + " out of range");
    pinned[node] = it->second;
  }
  HomSum sum(f, h, std::move(pinned), limits);
  return DensityValue::exact(sum.run());
}

DensityValue mixed_moment(const StepGraphon& h, const std::vector<std::size_t>& anchors,
                          const std::vector<unsigned>& exponents) {
  if (anchors.size() != exponents.size())
    throw InvalidArgument("mixed_moment: " + std::to_string(anchors.size()) + " anchors but " +
                          std::to_string(exponents.size()) + " exponents");
  for (std::size_t a : anchors)
    if (a >= h.block_count()) throw InvalidArgument("anchor block " + std::to_string(a) + " out of range");

  Rational total = 0;
  for (std::size_t x = 0; x < h.block_count(); ++x) {
    if (sgn(h.weight(x)) == 0) continue;
    Rational term = h.weight(x);
    for (std::size_t i = 0; i < anchors.size() && sgn(term) != 0; ++i)
      term *= pow(h.value(x, anchors[i]), exponents[i]);
    total += term;
  }
  return DensityValue::exact(std::move(total));
}

DensityValue density_mc(const LabeledMultigraph& f, const BlackBoxKernel& kernel, std::uint64_t samples,
                        std::uint64_t seed, unsigned threads) {
  require_unlabeled(f, "density_mc");
  if (samples < 2) throw InvalidArgument("density_mc needs at least 2 samples");
  if (!kernel.evaluator) throw InvalidArgument("density_mc needs a kernel");
  threads = std::max(1u, threads);

  const std::size_t k = f.node_count();
  std::vector<SplitMix64> streams;
  streams.reserve(k);
  for (std::size_t i = 0; i < k; ++i) streams.emplace_back(derive_seed(seed, {i}));

  // Samples are cut into fixed chunks whose (count, mean, M2) summaries are
  // merged in chunk order, so the result does not depend on `threads`.
  constexpr std::uint64_t kChunk = 1 << 14;
  struct Summary {
    double n = 0, mean = 0, m2 = 0;
  };
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Summary> summaries(chunks);
  auto run_chunk = [&](std::uint64_t c) {
    std::vector<double> x(k), v;
    const std::uint64_t begin = c * kChunk, end = std::min(samples, begin + kChunk);
    v.reserve(end - begin);
    for (std::uint64_t s = begin; s < end; ++s) {
      for (std::size_t i = 0; i < k; ++i) x[i] = to_unit(streams[i].at(s));
      double prod = 1.0;
      for (const Edge& e : f.edges()) {
        prod *= std::pow(kernel.evaluator(x[e.u], x[e.v]), static_cast<double>(e.mult));
        if (prod == 0.0) break;
      }
      v.push_back(prod);
    }
    Summary& out = summaries[c];
    out.n = static_cast<double>(v.size());
    for (double y : v) out.mean += y;
    out.mean /= out.n;
    for (double y : v) out.m2 += (y - out.mean) * (y - out.mean);
  };
  if (threads == 1 || chunks == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::uint64_t c = t; c < chunks; c += threads) run_chunk(c);
      });
    for (auto& th : pool) th.join();
  }

  Summary total;
  for (const Summary& b : summaries) {
    const double n = total.n + b.n;
    const double delta = b.mean - total.mean;
    total.mean += delta * b.n / n;
    total.m2 += b.m2 + delta * delta * total.n * b.n / n;
    total.n = n;
  }
  const double mean = total.mean;
  const double variance = total.m2 / static_cast<double>(samples - 1);
  return DensityValue::estimate({mean, std::sqrt(variance / static_cast<double>(samples)), samples});
}

ProductIdentity product_identity_check(const LabeledMultigraph& f1, const LabeledMultigraph& f2,
                                       const StepGraphon& h, const DensityLimits& limits) {
  std::vector<Label> labels;
  for (const auto& [node, label] : f1.labels()) labels.push_back(label);
  std::vector<Label> other;
  for (const auto& [node, label] : f2.labels()) other.push_back(label);
  std::sort(labels.begin(), labels.end());
  std::sort(other.begin(), other.end());
  if (labels != other) throw InvalidArgument("product identity needs both graphs to carry the same labels");

  ProductIdentity out;
  out.lhs = density_exact(unlabel(product(f1, f2)), h, limits).exact_value();

  const std::size_t n = h.block_count();
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < labels.size(); ++i) tuples = saturating_mul(tuples, n);
  if (tuples > limits.max_work) throw LimitExceeded("too many anchor tuples for the product identity");

  out.rhs = 0;
  std::vector<std::size_t> tuple(labels.size(), 0);
  while (true) {
    Rational weight = 1;
    for (std::size_t b : tuple) weight *= h.weight(b);
    if (sgn(weight) != 0) {
      AnchorAssignment anchors;
      for (std::size_t i = 0; i < labels.size(); ++i) anchors[labels[i]] = tuple[i];
      const Rational t1 = anchored_density(f1, h, anchors, limits).exact_value();
      if (sgn(t1) != 0) out.rhs += weight * t1 * anchored_density(f2, h, anchors, limits).exact_value();
    }
    std::size_t i = 0;
    while (i < tuple.size() && ++tuple[i] == n) tuple[i++] = 0;
    if (i == tuple.size()) break;
  }
  return out;
}

}  // namespace graphlim
