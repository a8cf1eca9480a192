#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "aemf/deviation.hpp"
#include "aemf/errors.hpp"
#include "aemf/graph.hpp"
#include "aemf/rational.hpp"

namespace aemf {

struct HomologousSet {
  std::vector<EdgeId> edges;
  DeviationFn deviation;

  friend bool operator==(const HomologousSet&, const HomologousSet&) = default;
};

inline constexpr std::size_t kNoSet = static_cast<std::size_t>(-1);

/// An AEMFP instance: graph, per-edge capacities (lower bounds are zero) and
/// pairwise disjoint homologous sets.
///
/// An edge listed in several sets is subdivided on construction: it becomes a
/// path whose first segment keeps the original edge id and whose further
/// segments (with the same capacity) are appended at the end of the edge list,
/// one per additional set. A warning is recorded for each such edge.
class Instance {
 public:
  Instance(Graph graph, std::vector<Rational> capacity, std::vector<HomologousSet> sets)
      : graph_(std::move(graph)), capacity_(std::move(capacity)), sets_(std::move(sets)) {
    if (capacity_.size() != graph_.num_edges()) {
      throw InvalidInstance("expected " + std::to_string(graph_.num_edges()) + " capacities, got " +
                            std::to_string(capacity_.size()));
    }
    for (EdgeId e = 0; e < capacity_.size(); ++e) {
      if (capacity_[e] < 0) throw InvalidInstance("edge " + std::to_string(e) + " has negative capacity");
    }
    subdivide_shared_edges();
    set_of_.assign(graph_.num_edges(), kNoSet);
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      if (sets_[i].edges.empty()) throw InvalidInstance("homologous set " + std::to_string(i) + " is empty");
      for (EdgeId e : sets_[i].edges) set_of_[e] = i;
      sets_[i].deviation.validate_on(u_R(i));
    }
  }

  const Graph& graph() const { return graph_; }
  std::size_t num_nodes() const { return graph_.num_nodes(); }
  std::size_t num_edges() const { return graph_.num_edges(); }
  const Rational& capacity(EdgeId e) const { return capacity_[e]; }
  const std::vector<Rational>& capacities() const { return capacity_; }
  const std::vector<HomologousSet>& sets() const { return sets_; }
  const HomologousSet& set(std::size_t i) const { return sets_[i]; }
  std::size_t k() const { return sets_.size(); }

  /// Index of the set containing `e`, or kNoSet for edges in Q.
  std::size_t set_of(EdgeId e) const { return set_of_[e]; }

  /// Smallest capacity in set i: the largest admissible lambda_i.
  Rational u_R(std::size_t i) const {
    Rational best = capacity_[sets_[i].edges.front()];
    for (EdgeId e : sets_[i].edges) best = std::min(best, capacity_[e]);
    return best;
  }

  Rational max_capacity() const {
    Rational best = 0;
    for (const Rational& c : capacity_) best = std::max(best, c);
    return best;
  }

  bool all_constant_shift() const {
    return std::all_of(sets_.begin(), sets_.end(), [](const HomologousSet& s) { return s.deviation.is_constant_shift(); });
  }

  bool integral_data() const {
    for (const Rational& c : capacity_) {
      if (!is_integral(c)) return false;
    }
    for (const HomologousSet& s : sets_) {
      for (const Rational& c : s.deviation.poly().coeffs()) {
        if (!is_integral(c)) return false;
      }
    }
    return true;
  }

  const std::vector<std::string>& warnings() const { return warnings_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.graph_ == b.graph_ && a.capacity_ == b.capacity_ && a.sets_ == b.sets_;
  }

 private:
  void subdivide_shared_edges() {
    const std::size_t original_edges = graph_.num_edges();
    std::vector<std::vector<std::size_t>> owners(original_edges);
    for (std::size_t i = 0; i < sets_.size(); ++i) {
      std::vector<EdgeId>& edges = sets_[i].edges;
      for (EdgeId e : edges) {
        if (e >= original_edges) {
          throw InvalidInstance("homologous set " + std::to_string(i) + " names unknown edge " + std::to_string(e));
        }
      }
      std::vector<EdgeId> sorted = edges;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidInstance("homologous set " + std::to_string(i) + " lists an edge twice");
      }
      for (EdgeId e : edges) owners[e].push_back(i);
    }

    for (EdgeId e = 0; e < original_edges; ++e) {
      if (owners[e].size() < 2) continue;
      const Edge original = graph_.edge(e);
      const Rational cap = capacity_[e];
      // Rebuild the graph with edge e redirected to the first new node.
      NodeId previous = graph_.num_nodes();
      Graph rebuilt(graph_.num_nodes() + 1, graph_.source(), graph_.sink());
      for (EdgeId f = 0; f < graph_.num_edges(); ++f) {
        const Edge& ef = graph_.edge(f);
        rebuilt.add_edge(ef.tail, f == e ? previous : ef.head);
      }
      for (std::size_t j = 1; j < owners[e].size(); ++j) {
        const bool last = j + 1 == owners[e].size();
        const NodeId next = last ? original.head : rebuilt.add_node();
        const EdgeId segment = rebuilt.add_edge(previous, next);
        capacity_.push_back(cap);
        std::vector<EdgeId>& edges = sets_[owners[e][j]].edges;
        std::replace(edges.begin(), edges.end(), e, segment);
        previous = next;
      }
      graph_ = std::move(rebuilt);
      warnings_.push_back("edge " + std::to_string(e) + " belongs to " + std::to_string(owners[e].size()) +
                          " homologous sets; subdivided into a path of " + std::to_string(owners[e].size()) +
                          " edges");
    }
  }

  Graph graph_;
  std::vector<Rational> capacity_;
  std::vector<HomologousSet> sets_;
  std::vector<std::size_t> set_of_;
  std::vector<std::string> warnings_;
};

}  // namespace aemf
