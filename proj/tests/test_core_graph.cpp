#include <gtest/gtest.h>

#include "support.hpp"

using namespace aemf;

namespace {

CapacityBounds plain_bounds(const std::vector<Rational>& upper) {
  return CapacityBounds{std::vector<Rational>(upper.size(), Rational(0)), upper};
}

}  // namespace

TEST(Graph, RejectsSelfLoopsAndKeepsParallelEdges) {
  Graph g(3, 0, 2);
  EXPECT_THROW(g.add_edge(1, 1), InvalidInstance);
  EXPECT_EQ(g.add_edge(0, 1), 0u);
  EXPECT_EQ(g.add_edge(0, 1), 1u);
  EXPECT_EQ(g.out_edges(0).size(), 2u);
  EXPECT_EQ(g.in_edges(1).size(), 2u);
  EXPECT_THROW(g.add_edge(0, 7), InvalidInstance);
  EXPECT_THROW(Graph(2, 1, 1), InvalidInstance);
}

TEST(MaxFlowBounded, SingleEdgeIsForced) {
  Graph g(2, 0, 1);
  g.add_edge(0, 1);
  const MaxFlowResult r = max_flow_bounded(g, plain_bounds({Rational(10)}));
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.flow.flow_value, 10);
  EXPECT_EQ(r.source_side, (std::vector<bool>{true, false}));
}

TEST(MaxFlowBounded, OneTripleGadgetMatchesEnumeratedMinCut) {
  X3CInstance x{3, {{0, 1, 2}}};
  const GadgetInstance gadget = generate_x3c_gadget(x, false);
  const Instance& inst = gadget.instance;
  ASSERT_EQ(inst.num_nodes(), 6u);
  ASSERT_EQ(inst.num_edges(), 8u);
  const CapacityBounds b = plain_bounds(inst.capacities());
  const MaxFlowResult r = max_flow_bounded(inst.graph(), b);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.flow.flow_value, fixtures::brute_min_cut(inst.graph(), b));
  EXPECT_EQ(r.flow.flow_value, 5);
}

TEST(MaxFlowBounded, UnreachableLowerBoundIsInfeasible) {
  Graph g(3, 0, 2);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  CapacityBounds b{{Rational(0), Rational(7)}, {Rational(5), Rational(10)}};
  const MaxFlowResult r = max_flow_bounded(g, b);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.deficit, 2);
}

TEST(CapacityBounds, LowerAboveUpperIsRejected) {
  Graph g(2, 0, 1);
  g.add_edge(0, 1);
  CapacityBounds b{{Rational(7)}, {Rational(5)}};
  EXPECT_THROW(b.validate(g), InvalidInstance);
}

TEST(CutCapacityAt, FreeEdgeOnly) {
  Graph g(3, 0, 2);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(1, 2);
  const Instance inst(std::move(g), {Rational(4), Rational(9), Rational(9)},
                      {HomologousSet{{1, 2}, DeviationFn::constant_shift(1)}});
  const CutReport cut = make_cut_report(inst, {true, false, false});
  for (long l = 0; l <= 9; ++l) {
    const std::vector<Rational> lambda{Rational(l)};
    EXPECT_EQ(cut_capacity_at(cut, lambda), 4);
  }
  EXPECT_EQ(cut.d_R, (std::vector<long>{0}));
}

TEST(CutCapacityAt, TwoHomologousEdgesAgreeWithDirectComputation) {
  const Instance inst = fixtures::two_parallel(10, 10);
  const CutReport cut = make_cut_report(inst, {true, false});
  const std::vector<Rational> lambda{Rational(3)};
  EXPECT_EQ(cut_capacity_at(cut, lambda), fixtures::direct_cut_capacity(inst, cut.s_side, lambda));
  EXPECT_EQ(cut_capacity_at(cut, lambda), 8);
  EXPECT_EQ(cut.d_R, (std::vector<long>{2}));
}

TEST(CutCapacityAt, ForwardAndBackwardEdgesCancel) {
  // s -> v (free, cap 6), v -> t homologous (cap 10), t -> v homologous (cap 10).
  Graph g(3, 0, 2);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 1);
  const Instance inst(std::move(g), {Rational(6), Rational(10), Rational(10)},
                      {HomologousSet{{1, 2}, DeviationFn::constant_shift(0)}});
  const CutReport cut = make_cut_report(inst, {true, true, false});
  const std::vector<Rational> lambda{Rational(2)};
  EXPECT_EQ(cut.d_R, (std::vector<long>{0}));
  EXPECT_EQ(cut_capacity_at(cut, lambda), cut.capacity_const);
}

TEST(InstanceSubdivision, SharedEdgeIsSplit) {
  Graph g(2, 0, 1);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  const Instance inst(std::move(g), {Rational(3), Rational(5)},
                      {HomologousSet{{0, 1}, DeviationFn::constant_shift(1)},
                       HomologousSet{{0}, DeviationFn::constant_shift(2)}});
  EXPECT_EQ(inst.num_nodes(), 3u);
  EXPECT_EQ(inst.num_edges(), 3u);
  EXPECT_EQ(inst.k(), 2u);
  EXPECT_EQ(inst.warnings().size(), 1u);
  EXPECT_NE(inst.set_of(0), inst.set_of(2));
  EXPECT_EQ(inst.capacity(2), 3);
}

class RandomNetworks : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(RandomNetworks, FlowIsFeasibleOptimalAndCertified) {
  const Instance inst = generate_random(fixtures::small_random(GetParam(), 1, 1));
  const Rational u = inst.u_R(0);
  for (int step = 0; step <= 4; ++step) {
    const std::vector<Rational> lambda{u * ratio(step, 4)};
    const CapacityBounds b = build_G_lambda(inst, lambda);
    const MaxFlowResult r = max_flow_bounded(inst.graph(), b);
    if (!r.feasible) continue;
    const Graph& g = inst.graph();
    bool integral_bounds = true;
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      EXPECT_LE(b.lower[e], r.flow.values[e]);
      EXPECT_LE(r.flow.values[e], b.upper[e]);
      integral_bounds = integral_bounds && is_integral(b.lower[e]) && is_integral(b.upper[e]);
    }
    if (integral_bounds) {
      for (const Rational& x : r.flow.values) EXPECT_TRUE(is_integral(x));
    }
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (v != g.source() && v != g.sink()) {
        EXPECT_EQ(net_outflow(g, r.flow.values, v), 0);
      }
    }
    EXPECT_EQ(r.flow.flow_value, r.cut_capacity);
    EXPECT_EQ(r.flow.flow_value, fixtures::brute_min_cut(g, b));
    const CutReport cut = make_cut_report(inst, r.source_side);
    for (int probe = 0; probe <= 8; ++probe) {
      const std::vector<Rational> at{u * ratio(probe, 8)};
      EXPECT_EQ(cut_capacity_at(cut, at), fixtures::direct_cut_capacity(inst, cut.s_side, at));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomNetworks, ::testing::Range<std::uint64_t>(1, 31));
