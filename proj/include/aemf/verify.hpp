#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "aemf/instance.hpp"

namespace aemf {

struct Violation {
  enum class Kind { Bounds, Conservation, Homologous };
  Kind kind;
  std::size_t set = kNoSet;  // Homologous only
  EdgeId edge = 0;           // Bounds and Homologous
  NodeId node = 0;           // Conservation only
  std::string message;
};

struct FlowReport {
  std::vector<Violation> violations;
  Rational value;  // net outflow of the source

  bool ok() const { return violations.empty(); }
};

/// Checks 0 <= f <= u on every edge, conservation at inner nodes and, per set,
/// f_i <= f(r) <= Delta_i(f_i) with f_i the smallest flow on the set.
inline FlowReport verify_flow(const Instance& inst, const std::vector<Rational>& flow) {
  const Graph& g = inst.graph();
  FlowReport report;
  if (flow.size() != g.num_edges()) {
    report.violations.push_back({Violation::Kind::Bounds, kNoSet, 0, 0,
                                 "expected " + std::to_string(g.num_edges()) + " flow values, got " +
                                     std::to_string(flow.size())});
    return report;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (flow[e] < 0 || flow[e] > inst.capacity(e)) {
      report.violations.push_back({Violation::Kind::Bounds, kNoSet, e, 0,
                                   "edge " + std::to_string(e) + ": flow " + to_string(flow[e]) +
                                       " outside [0, " + to_string(inst.capacity(e)) + "]"});
    }
  }
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    const Rational excess = net_outflow(g, flow, v);
    if (v == g.source()) {
      report.value = excess;
    } else if (v != g.sink() && excess != 0) {
      report.violations.push_back({Violation::Kind::Conservation, kNoSet, 0, v,
                                   "node " + std::to_string(v) + ": net outflow " + to_string(excess)});
    }
  }
  for (std::size_t i = 0; i < inst.k(); ++i) {
    const HomologousSet& set = inst.set(i);
    Rational low = flow[set.edges.front()];
    for (EdgeId e : set.edges) low = std::min(low, flow[e]);
    const Rational high = set.deviation(low);
    for (EdgeId e : set.edges) {
      if (flow[e] > high) {
        report.violations.push_back({Violation::Kind::Homologous, i, e, 0,
                                     "set " + std::to_string(i) + ", edge " + std::to_string(e) + ": flow " +
                                         to_string(flow[e]) + " exceeds Delta(" + to_string(low) + ") = " +
                                         to_string(high)});
      }
    }
  }
  return report;
}

}  // namespace aemf
