#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <optional>
#include <string>
#include <vector>

#include "aemf/aemf.hpp"

namespace fixtures {

using aemf::DeviationFn;
using aemf::Graph;
using aemf::HomologousSet;
using aemf::Instance;
using aemf::Rational;

/// Two parallel s -> t edges, both homologous.
inline Instance two_parallel(long cap_a = 4, long cap_b = 10, DeviationFn dev = DeviationFn::constant_shift(1)) {
  Graph g(2, 0, 1);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  return Instance(std::move(g), {Rational(cap_a), Rational(cap_b)}, {HomologousSet{{0, 1}, std::move(dev)}});
}

/// s -> v (capacity 3, free), then two homologous v -> t edges of capacity 10.
inline Instance bottleneck(long shift = 0) {
  Graph g(3, 0, 2);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(1, 2);
  return Instance(std::move(g), {Rational(3), Rational(10), Rational(10)},
                  {HomologousSet{{1, 2}, DeviationFn::constant_shift(shift)}});
}

inline Instance single_edge(long cap = 10, long shift = 0) {
  Graph g(2, 0, 1);
  g.add_edge(0, 1);
  return Instance(std::move(g), {Rational(cap)}, {HomologousSet{{0}, DeviationFn::constant_shift(shift)}});
}

/// Parameters of the small random family used across suites: n <= 8,
/// m <= 12, capacities <= 5, constant shifts in {0, 1, 2}.
inline aemf::RandomParams small_random(std::uint64_t seed, std::size_t k, long shift = -1,
                                       aemf::RandomDeviation dev = aemf::RandomDeviation::Constant) {
  aemf::RandomParams p;
  p.n = 4 + seed % 5;
  p.m = std::min<std::size_t>(12, p.n + 2 + seed % 5);
  p.k = k;
  p.cap_max = 5;
  p.deviation = dev;
  p.shift = shift;
  p.seed = seed;
  return p;
}

/// Maximum flow of a feasible network with lower bounds as the minimum over
/// all s-t cuts of u(out) - l(in), by enumeration.
inline Rational brute_min_cut(const Graph& g, const aemf::CapacityBounds& b) {
  std::vector<aemf::NodeId> inner;
  for (aemf::NodeId v = 0; v < g.num_nodes(); ++v) {
    if (v != g.source() && v != g.sink()) inner.push_back(v);
  }
  std::optional<Rational> best;
  for (unsigned long mask = 0; mask < (1UL << inner.size()); ++mask) {
    std::vector<bool> side(g.num_nodes(), false);
    side[g.source()] = true;
    for (std::size_t j = 0; j < inner.size(); ++j) side[inner[j]] = (mask >> j) & 1U;
    Rational cap = 0;
    for (aemf::EdgeId e = 0; e < g.num_edges(); ++e) {
      const bool t = side[g.edge(e).tail];
      const bool h = side[g.edge(e).head];
      if (t && !h) cap += b.upper[e];
      if (!t && h) cap -= b.lower[e];
    }
    if (!best || cap < *best) best = cap;
  }
  return *best;
}

/// Capacity of `side` in G_lambda computed straight from the bounds.
inline Rational direct_cut_capacity(const Instance& inst, const std::vector<bool>& side,
                                    const std::vector<Rational>& lambda) {
  const aemf::CapacityBounds b = aemf::build_G_lambda(inst, lambda);
  Rational cap = 0;
  for (aemf::EdgeId e = 0; e < inst.num_edges(); ++e) {
    const bool t = side[inst.graph().edge(e).tail];
    const bool h = side[inst.graph().edge(e).head];
    if (t && !h) cap += b.upper[e];
    if (!t && h) cap -= b.lower[e];
  }
  return cap;
}

struct CliRun {
  int code = -1;
  std::string out;
};

/// Runs the command-line tool with `args` (already shell-quoted) and captures
/// stdout; stderr is appended when `with_stderr` is set.
inline CliRun run_cli(const std::string& args, bool with_stderr = false) {
  const std::string cmd = std::string("\"") + AEMF_CLI_PATH + "\" " + args + (with_stderr ? " 2>&1" : " 2>/dev/null");
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string sample(const std::string& name) { return std::string(AEMF_SAMPLES_DIR) + "/" + name; }

}  // namespace fixtures
