#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "aemf/errors.hpp"
#include "aemf/rational.hpp"

namespace aemf {

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  NodeId tail;
  NodeId head;
};

/// Directed multigraph with a designated source and sink. Edge ids are dense
/// (0..m-1) in insertion order. Parallel edges are allowed, self-loops are not.
class Graph {
 public:
  Graph(std::size_t num_nodes, NodeId source, NodeId sink)
      : out_(num_nodes), in_(num_nodes), source_(source), sink_(sink) {
    if (num_nodes < 2) throw InvalidInstance("a graph needs at least two nodes");
    if (source >= num_nodes || sink >= num_nodes) {
      throw InvalidInstance("source or sink out of range");
    }
    if (source == sink) throw InvalidInstance("source and sink must differ");
  }

  NodeId add_node() {
    out_.emplace_back();
    in_.emplace_back();
    return out_.size() - 1;
  }

  EdgeId add_edge(NodeId tail, NodeId head) {
    if (tail >= num_nodes() || head >= num_nodes()) {
      throw InvalidInstance("edge endpoint out of range: " + std::to_string(tail) + " -> " +
                            std::to_string(head));
    }
    if (tail == head) throw InvalidInstance("self-loop at node " + std::to_string(tail));
    const EdgeId id = edges_.size();
    edges_.push_back({tail, head});
    out_[tail].push_back(id);
    in_[head].push_back(id);
    return id;
  }

  std::size_t num_nodes() const { return out_.size(); }
  std::size_t num_edges() const { return edges_.size(); }
  NodeId source() const { return source_; }
  NodeId sink() const { return sink_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<EdgeId>& out_edges(NodeId v) const { return out_.at(v); }
  const std::vector<EdgeId>& in_edges(NodeId v) const { return in_.at(v); }

  friend bool operator==(const Graph& a, const Graph& b) {
    if (a.source_ != b.source_ || a.sink_ != b.sink_ || a.num_nodes() != b.num_nodes() ||
        a.num_edges() != b.num_edges()) {
      return false;
    }
    for (EdgeId e = 0; e < a.num_edges(); ++e) {
      if (a.edges_[e].tail != b.edges_[e].tail || a.edges_[e].head != b.edges_[e].head) {
        return false;
      }
    }
    return true;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
  NodeId source_;
  NodeId sink_;
};

struct CapacityBounds {
  std::vector<Rational> lower;
  std::vector<Rational> upper;

  void validate(const Graph& g) const {
    if (lower.size() != g.num_edges() || upper.size() != g.num_edges()) {
      throw InvalidInstance("capacity bounds do not match the edge count");
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (lower[e] < 0 || lower[e] > upper[e]) {
        throw InvalidInstance("edge " + std::to_string(e) + ": bounds must satisfy 0 <= lower <= upper");
      }
    }
  }
};

struct FlowAssignment {
  std::vector<Rational> values;
  Rational flow_value;  // net outflow of the source
};

/// Net outflow of `v` under `flow`.
template <class Value>
Value net_outflow(const Graph& g, const std::vector<Value>& flow, NodeId v) {
  Value total{};
  for (EdgeId e : g.out_edges(v)) total += flow[e];
  for (EdgeId e : g.in_edges(v)) total -= flow[e];
  return total;
}

}  // namespace aemf
