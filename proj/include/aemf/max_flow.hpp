#pragma once

// Edmonds-Karp with lower bounds. The engine is generic over the value type:
// it runs on exact rationals, on scaled integers, and on symbolic values whose
// comparisons are answered by an ordering policy (parametric search).

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "aemf/graph.hpp"
#include "aemf/rational.hpp"

namespace aemf {

/// Ordering policy for plain numbers.
template <class T>
struct NumericOrder {
  int sign(const T& v) const {
    if constexpr (std::is_same_v<T, Rational>) {
      return sgn(v);
    } else {
      return (v > T{}) - (v < T{});
    }
  }
};

template <class Value>
struct BoundedFlow {
  bool feasible = false;
  Value deficit{};  // sum of lower bounds minus the best circulation; zero iff feasible
  std::vector<Value> flow;
  Value value{};  // net outflow of the source
  std::vector<bool> source_side;  // canonical minimum cut: reachable from s in the residual network
};

namespace detail {

template <class Value, class Order>
class ResidualNetwork {
 public:
  ResidualNetwork(std::size_t num_nodes, const Order& order) : adjacency_(num_nodes), order_(order) {}

  std::size_t add_arc_pair(NodeId from, NodeId to, Value capacity, bool infinite = false) {
    const std::size_t index = arcs_.size();
    arcs_.push_back({to, std::move(capacity), infinite, true});
    arcs_.push_back({from, Value{}, false, true});
    arcs_[index + 1].sign = 0;
    adjacency_[from].push_back(index);
    adjacency_[to].push_back(index + 1);
    return index;
  }

  void disable_pair(std::size_t index) {
    arcs_[index].enabled = false;
    arcs_[index ^ 1U].enabled = false;
  }

  const Value& residual(std::size_t index) const { return arcs_[index].residual; }

  /// Augments along shortest paths (by arc count) until none is left.
  /// Returns the total amount pushed.
  Value max_flow(NodeId from, NodeId to) {
    Value total{};
    std::vector<std::size_t> parent(adjacency_.size());
    std::vector<bool> seen(adjacency_.size());
    std::vector<NodeId> queue;
    queue.reserve(adjacency_.size());
    while (true) {
      std::fill(seen.begin(), seen.end(), false);
      queue.clear();
      queue.push_back(from);
      seen[from] = true;
      for (std::size_t head = 0; head < queue.size() && !seen[to]; ++head) {
        const NodeId v = queue[head];
        for (std::size_t a : adjacency_[v]) {
          const Arc& arc = arcs_[a];
          if (seen[arc.to] || !positive(arc)) continue;
          seen[arc.to] = true;
          parent[arc.to] = a;
          queue.push_back(arc.to);
        }
      }
      if (!seen[to]) return total;

      const Value* bottleneck = nullptr;
      for (NodeId v = to; v != from; v = arcs_[parent[v] ^ 1U].to) {
        const Arc& arc = arcs_[parent[v]];
        if (arc.infinite) continue;
        if (bottleneck == nullptr || order_.sign(arc.residual - *bottleneck) < 0) {
          bottleneck = &arc.residual;
        }
      }
      if (bottleneck == nullptr) throw std::logic_error("unbounded augmenting path");
      const Value amount = *bottleneck;
      for (NodeId v = to; v != from; v = arcs_[parent[v] ^ 1U].to) {
        Arc& arc = arcs_[parent[v]];
        if (!arc.infinite) {
          arc.residual -= amount;
          arc.sign = kUnknownSign;
        }
        Arc& reverse = arcs_[parent[v] ^ 1U];
        reverse.residual += amount;
        reverse.sign = kUnknownSign;
      }
      total += amount;
    }
  }

  std::vector<bool> reachable(NodeId from) const {
    std::vector<bool> seen(adjacency_.size());
    std::vector<NodeId> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      for (std::size_t a : adjacency_[v]) {
        const Arc& arc = arcs_[a];
        if (seen[arc.to] || !positive(arc)) continue;
        seen[arc.to] = true;
        stack.push_back(arc.to);
      }
    }
    return seen;
  }

 private:
  static constexpr int kUnknownSign = 2;

  struct Arc {
    NodeId to;
    Value residual;
    bool infinite;
    bool enabled;
    mutable int sign = kUnknownSign;  // cached order sign of `residual`
  };

  bool positive(const Arc& arc) const {
    if (!arc.enabled) return false;
    if (arc.infinite) return true;
    if (arc.sign == kUnknownSign) arc.sign = order_.sign(arc.residual);
    return arc.sign > 0;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adjacency_;
  const Order& order_;
};

}  // namespace detail

/// Maximum s-t flow subject to lower <= f <= upper.
///
/// Feasibility is decided by the circulation reduction: every edge keeps
/// capacity upper - lower, a super-source feeds lower(e) into head(e), tail(e)
/// drains lower(e) into a super-sink, and an uncapacitated t->s arc closes the
/// circulation. If the super arcs saturate, the t->s arc is removed and the
/// feasible flow is augmented to a maximum s-t flow in the same residual network.
/// Paths are shortest by arc count; ties follow edge-id order.
template <class Value, class Order>
BoundedFlow<Value> bounded_max_flow(const Graph& g, std::span<const Value> lower,
                                    std::span<const Value> upper, const Order& order) {
  const std::size_t n = g.num_nodes();
  const std::size_t m = g.num_edges();
  const NodeId super_source = n;
  const NodeId super_sink = n + 1;
  detail::ResidualNetwork<Value, Order> net(n + 2, order);

  for (EdgeId e = 0; e < m; ++e) {
    Value capacity = upper[e];
    capacity -= lower[e];
    net.add_arc_pair(g.edge(e).tail, g.edge(e).head, std::move(capacity));
  }
  const std::size_t closing = net.add_arc_pair(g.sink(), g.source(), Value{}, true);
  std::vector<std::size_t> demand_arcs;
  Value demand{};
  for (EdgeId e = 0; e < m; ++e) {
    if (lower[e] == Value{}) continue;
    demand_arcs.push_back(net.add_arc_pair(super_source, g.edge(e).head, lower[e]));
    demand_arcs.push_back(net.add_arc_pair(g.edge(e).tail, super_sink, lower[e]));
    demand += lower[e];
  }

  BoundedFlow<Value> result;
  if (!demand_arcs.empty()) {
    result.deficit = demand;
    result.deficit -= net.max_flow(super_source, super_sink);
  }
  result.feasible = order.sign(result.deficit) == 0;
  if (!result.feasible) return result;

  for (std::size_t a : demand_arcs) net.disable_pair(a);
  net.disable_pair(closing);
  net.max_flow(g.source(), g.sink());

  result.flow.reserve(m);
  for (EdgeId e = 0; e < m; ++e) {
    Value f = lower[e];
    f += net.residual(2 * e + 1);
    result.flow.push_back(std::move(f));
  }
  result.value = net_outflow(g, result.flow, g.source());
  result.source_side = net.reachable(g.source());
  result.source_side.resize(n);
  return result;
}

/// Capacity of the cut (S, V\S) in a network with lower bounds:
/// upper bounds of edges leaving S minus lower bounds of edges entering S.
inline Rational cut_capacity(const Graph& g, const CapacityBounds& bounds,
                             const std::vector<bool>& source_side) {
  Rational total = 0;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const bool tail_in = source_side[g.edge(e).tail];
    const bool head_in = source_side[g.edge(e).head];
    if (tail_in && !head_in) total += bounds.upper[e];
    if (!tail_in && head_in) total -= bounds.lower[e];
  }
  return total;
}

struct MaxFlowResult {
  bool feasible = false;
  Rational deficit;
  FlowAssignment flow;
  std::vector<bool> source_side;
  Rational cut_capacity;
};

/// Exact maximum flow with lower bounds. `feasible == false` signals that the
/// lower bounds cannot be met; `deficit` then says by how much.
inline MaxFlowResult max_flow_bounded(const Graph& g, const CapacityBounds& bounds) {
  bounds.validate(g);
  const NumericOrder<Rational> order;
  BoundedFlow<Rational> raw = bounded_max_flow<Rational>(g, bounds.lower, bounds.upper, order);
  MaxFlowResult out;
  out.feasible = raw.feasible;
  out.deficit = raw.deficit;
  if (!raw.feasible) return out;
  out.flow.values = std::move(raw.flow);
  out.flow.flow_value = raw.value;
  out.source_side = std::move(raw.source_side);
  out.cut_capacity = cut_capacity(g, bounds, out.source_side);
  return out;
}

}  // namespace aemf
