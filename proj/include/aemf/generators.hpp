#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "aemf/errors.hpp"
#include "aemf/instance.hpp"

namespace aemf {

/// Exact Cover by 3-Sets: universe {0..q-1}, triples of distinct elements.
struct X3CInstance {
  std::size_t q = 0;
  std::vector<std::array<std::size_t, 3>> triples;

  void validate() const {
    if (q == 0 || q % 3 != 0) throw InvalidInstance("X3C universe size must be a positive multiple of 3");
    for (std::size_t i = 0; i < triples.size(); ++i) {
      const auto& t = triples[i];
      for (std::size_t a : t) {
        if (a >= q) throw InvalidInstance("triple " + std::to_string(i) + " names element outside the universe");
      }
      if (t[0] == t[1] || t[0] == t[2] || t[1] == t[2]) {
        throw InvalidInstance("triple " + std::to_string(i) + " repeats an element");
      }
    }
  }

  friend bool operator==(const X3CInstance&, const X3CInstance&) = default;
};

struct GadgetMeta {
  enum class Kind { X3CBasic, ApproxChain, ConvexX3C };
  Kind kind = Kind::X3CBasic;
  std::size_t chain_k = 0;  // ApproxChain only
  Rational expected_yes_value;
  Rational expected_no_bound;  // integer optimum of no-instances is at most this
  std::vector<EdgeId> bonus_edges;
  std::size_t padded_triples = 0;
  bool solve_supported = true;
  std::vector<std::string> notes;
};

struct GadgetInstance {
  Instance instance;
  GadgetMeta meta;
};

inline const char* to_string(GadgetMeta::Kind kind) {
  switch (kind) {
    case GadgetMeta::Kind::X3CBasic:
      return "X3CBasic";
    case GadgetMeta::Kind::ApproxChain:
      return "ApproxChain";
    case GadgetMeta::Kind::ConvexX3C:
      return "ConvexX3C";
  }
  return "?";
}

namespace detail {

struct X3CLayout {
  Graph graph;
  std::vector<Rational> capacity;
  std::vector<std::vector<EdgeId>> triple_sets;  // element edges then the bonus edge
  std::vector<EdgeId> element_sink_edges;       // (a_j, t)
  std::vector<EdgeId> bonus_edges;
  std::size_t padded = 0;
};

// Nodes: s = 0, t = 1, S_i = 2 + i, a_j = 2 + p + j. When there are fewer
// triples than elements the list is padded cyclically with copies, so that the
// yes-value is 7q/3 (a copy adds no coverage and cannot turn a no-instance
// into a yes-instance).
inline X3CLayout build_x3c_layout(const X3CInstance& x3c, bool pad) {
  x3c.validate();
  std::vector<std::array<std::size_t, 3>> triples = x3c.triples;
  std::size_t padded = 0;
  if (pad && !triples.empty()) {
    for (std::size_t i = 0; triples.size() < x3c.q; ++i, ++padded) triples.push_back(triples[i]);
  }
  const std::size_t p = triples.size();
  const std::size_t q = x3c.q;
  X3CLayout out{Graph(2 + p + q, 0, 1), {}, {}, {}, {}, padded};
  auto add = [&out](NodeId a, NodeId b, long cap) {
    const EdgeId e = out.graph.add_edge(a, b);
    out.capacity.emplace_back(cap);
    return e;
  };
  for (std::size_t i = 0; i < p; ++i) add(0, 2 + i, 5);
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<EdgeId> set;
    for (std::size_t a : triples[i]) set.push_back(add(2 + i, 2 + p + a, 1));
    const EdgeId bonus = add(2 + i, 1, 2);
    set.push_back(bonus);
    out.bonus_edges.push_back(bonus);
    out.triple_sets.push_back(std::move(set));
  }
  for (std::size_t j = 0; j < q; ++j) out.element_sink_edges.push_back(add(2 + p + j, 1, 1));
  return out;
}

inline std::vector<HomologousSet> x3c_sets(const X3CLayout& layout, const DeviationFn& dev) {
  std::vector<HomologousSet> sets;
  for (const auto& s : layout.triple_sets) sets.push_back({s, dev});
  if (!layout.element_sink_edges.empty()) sets.push_back({layout.element_sink_edges, dev});
  return sets;
}

}  // namespace detail

/// Hardness gadget for the integer problem with Delta(x) = x + 1. A flow of
/// value 4q/3 + p (7q/3 after padding to p = q) exists iff the triples contain
/// an exact cover.
inline GadgetInstance generate_x3c_gadget(const X3CInstance& x3c, bool pad = true) {
  detail::X3CLayout layout = detail::build_x3c_layout(x3c, pad);
  const DeviationFn dev = DeviationFn::constant_shift(1);
  std::vector<HomologousSet> sets = detail::x3c_sets(layout, dev);
  GadgetMeta meta;
  meta.kind = GadgetMeta::Kind::X3CBasic;
  const Rational q(static_cast<long>(x3c.q));
  const Rational p(static_cast<long>(layout.triple_sets.size()));
  meta.expected_yes_value = q * 4 / 3 + p;
  meta.expected_no_bound = meta.expected_yes_value - 1;
  meta.bonus_edges = layout.bonus_edges;
  meta.padded_triples = layout.padded;
  if (layout.padded > 0) {
    meta.notes.push_back("padded with " + std::to_string(layout.padded) + " copied triples");
  }
  return {Instance(std::move(layout.graph), std::move(layout.capacity), std::move(sets)), meta};
}

enum class ChainDeviation { ConstantShift, Affine };

/// Approximation gadget: the basic gadget followed by t -> t' (capacity 7q/3),
/// 7q/3 parallel unit edges t' -> t'' and k * 7q/3 parallel bonus edges s -> t''
/// of capacity 2. The new sink is t''. All (t', t'') and (s, t'') edges form one
/// extra homologous set with Delta(x) = x + 1 or Delta(x) = k x.
inline GadgetInstance generate_approx_gadget(const X3CInstance& x3c, std::size_t k, ChainDeviation deviation) {
  if (k == 0) throw InvalidInstance("approximation gadget needs k >= 1");
  detail::X3CLayout layout = detail::build_x3c_layout(x3c, true);
  const std::size_t w = 7 * x3c.q / 3;
  Graph& g = layout.graph;
  const NodeId t = g.sink();
  const NodeId t1 = g.add_node();
  const NodeId t2 = g.add_node();
  Graph rebuilt(g.num_nodes(), g.source(), t2);
  for (const Edge& e : g.edges()) rebuilt.add_edge(e.tail, e.head);
  std::vector<Rational> capacity = layout.capacity;
  rebuilt.add_edge(t, t1);
  capacity.emplace_back(static_cast<long>(w));
  HomologousSet chain{{}, deviation == ChainDeviation::ConstantShift
                              ? DeviationFn::constant_shift(1)
                              : DeviationFn::affine(Rational(static_cast<long>(k)), 0)};
  for (std::size_t i = 0; i < w; ++i) {
    chain.edges.push_back(rebuilt.add_edge(t1, t2));
    capacity.emplace_back(1);
  }
  GadgetMeta meta;
  meta.kind = GadgetMeta::Kind::ApproxChain;
  meta.chain_k = k;
  meta.padded_triples = layout.padded;
  for (std::size_t i = 0; i < k * w; ++i) {
    const EdgeId e = rebuilt.add_edge(rebuilt.source(), t2);
    capacity.emplace_back(2);
    chain.edges.push_back(e);
    meta.bonus_edges.push_back(e);
  }
  std::vector<HomologousSet> sets = detail::x3c_sets(layout, DeviationFn::constant_shift(1));
  sets.push_back(std::move(chain));

  const Rational base(static_cast<long>(w));
  const Rational bonus(static_cast<long>(k * w));
  if (deviation == ChainDeviation::ConstantShift) {
    meta.expected_yes_value = base + 2 * bonus;
    meta.expected_no_bound = base - 1 + bonus;
  } else {
    meta.expected_yes_value = base + bonus * std::min<long>(2, static_cast<long>(k));
    meta.expected_no_bound = 0;
  }
  return {Instance(std::move(rebuilt), std::move(capacity), std::move(sets)), meta};
}

/// Basic gadget topology with Delta(x) = 2x^2 + 1 on every set. Convex
/// deviations are outside what the solvers handle; use the oracles.
inline GadgetInstance generate_convex_gadget(const X3CInstance& x3c) {
  detail::X3CLayout layout = detail::build_x3c_layout(x3c, true);
  const DeviationFn dev = DeviationFn::polynomial({Rational(1), Rational(0), Rational(2)});
  std::vector<HomologousSet> sets = detail::x3c_sets(layout, dev);
  GadgetMeta meta;
  meta.kind = GadgetMeta::Kind::ConvexX3C;
  meta.expected_yes_value = ratio(static_cast<long>(8 * x3c.q), 3);
  meta.expected_no_bound = meta.expected_yes_value - 1;
  meta.bonus_edges = layout.bonus_edges;
  meta.padded_triples = layout.padded;
  meta.solve_supported = false;
  return {Instance(std::move(layout.graph), std::move(layout.capacity), std::move(sets)), meta};
}

enum class RandomDeviation { Constant, Affine, ConcaveQuadratic, Mixed };

struct RandomParams {
  std::size_t n = 8;
  std::size_t m = 12;
  std::size_t k = 1;
  long cap_max = 5;
  RandomDeviation deviation = RandomDeviation::Constant;
  long shift = -1;  // constant shift; -1 draws from {0, 1, 2}
  std::uint64_t seed = 1;
};

namespace detail {

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : engine_(seed) {}
  /// Uniform-ish integer in [lo, hi]; plain modulo keeps the stream identical
  /// across standard libraries.
  long between(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % span);
  }
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(between(0, static_cast<long>(i) - 1))]);
  }

 private:
  std::mt19937_64 engine_;
};

inline DeviationFn random_deviation(Draw& draw, RandomDeviation kind, long shift, const Rational& u) {
  switch (kind) {
    case RandomDeviation::Constant:
      return DeviationFn::constant_shift(Rational(shift >= 0 ? shift : draw.between(0, 2)));
    case RandomDeviation::Affine:
      return DeviationFn::affine(Rational(draw.between(1, 3)), Rational(draw.between(0, 1)));
    case RandomDeviation::ConcaveQuadratic: {
      // c2 < 0; c1 keeps the derivative nonnegative up to u; c0 keeps Delta(u) >= u.
      const Rational c2(-1, draw.between(1, 4) * 2);
      const Rational c1 = -2 * c2 * u + draw.between(0, 2);
      Rational c0 = u - c1 * u - c2 * u * u;
      if (c0 < 0) c0 = 0;
      c0 += draw.between(0, 1);
      return DeviationFn::polynomial({c0, c1, c2});
    }
    case RandomDeviation::Mixed:
      switch (draw.between(0, 2)) {
        case 0:
          return DeviationFn::affine(Rational(2), Rational(0));
        case 1:
          return DeviationFn::constant_shift(Rational(1));
        default:
          return random_deviation(draw, RandomDeviation::ConcaveQuadratic, shift, u);
      }
  }
  return DeviationFn::constant_shift(Rational(0));
}

}  // namespace detail

/// Random instance with an s-t path, integer capacities in [1, cap_max] and k
/// disjoint homologous sets. Deterministic in the seed.
inline Instance generate_random(const RandomParams& params) {
  if (params.n < 2) throw InvalidInstance("random instance needs n >= 2");
  if (params.m < 1) throw InvalidInstance("random instance needs m >= 1");
  if (params.cap_max < 1) throw InvalidInstance("cap_max must be positive");
  if (params.k > params.m) throw InvalidInstance("more homologous sets than edges");
  detail::Draw draw(params.seed);
  const std::size_t n = params.n;
  const NodeId s = 0;
  const NodeId t = n - 1;
  Graph g(n, s, t);
  std::vector<Rational> capacity;
  auto add = [&](NodeId a, NodeId b) {
    g.add_edge(a, b);
    capacity.emplace_back(draw.between(1, params.cap_max));
  };

  std::vector<NodeId> inner;
  for (NodeId v = 1; v + 1 < n; ++v) inner.push_back(v);
  draw.shuffle(inner);
  const std::size_t hops = std::min<std::size_t>(inner.size(), params.m - 1);
  const std::size_t path_inner = hops == 0 ? 0 : static_cast<std::size_t>(draw.between(0, static_cast<long>(hops)));
  NodeId prev = s;
  for (std::size_t i = 0; i < path_inner; ++i) {
    add(prev, inner[i]);
    prev = inner[i];
  }
  add(prev, t);
  while (g.num_edges() < params.m) {
    const NodeId a = static_cast<NodeId>(draw.between(0, static_cast<long>(n) - 1));
    const NodeId b = static_cast<NodeId>(draw.between(0, static_cast<long>(n) - 1));
    if (a == b || a == t || b == s) continue;
    add(a, b);
  }

  std::vector<EdgeId> pool(params.m);
  for (EdgeId e = 0; e < params.m; ++e) pool[e] = e;
  draw.shuffle(pool);
  std::vector<HomologousSet> sets;
  std::size_t next = 0;
  for (std::size_t i = 0; i < params.k; ++i) {
    const std::size_t remaining_sets = params.k - i - 1;
    const std::size_t available = params.m - next - remaining_sets;
    const std::size_t size = static_cast<std::size_t>(draw.between(1, static_cast<long>(std::min<std::size_t>(available, 4))));
    std::vector<EdgeId> edges(pool.begin() + static_cast<long>(next), pool.begin() + static_cast<long>(next + size));
    std::sort(edges.begin(), edges.end());
    next += size;
    Rational u = capacity[edges.front()];
    for (EdgeId e : edges) u = std::min(u, capacity[e]);
    sets.push_back({std::move(edges), detail::random_deviation(draw, params.deviation, params.shift, u)});
  }
  return Instance(std::move(g), std::move(capacity), std::move(sets));
}

}  // namespace aemf
