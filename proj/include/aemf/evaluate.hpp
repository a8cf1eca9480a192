#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aemf/cut.hpp"
#include "aemf/errors.hpp"
#include "aemf/instance.hpp"
#include "aemf/max_flow.hpp"

namespace aemf {

inline void check_lambda_domain(const Instance& inst, std::span<const Rational> lambda) {
  if (lambda.size() != inst.k()) {
    throw InvalidInstance("expected " + std::to_string(inst.k()) + " lambda values, got " +
                          std::to_string(lambda.size()));
  }
  for (std::size_t i = 0; i < inst.k(); ++i) {
    if (lambda[i] < 0 || lambda[i] > inst.u_R(i)) {
      throw InvalidInstance("lambda " + std::to_string(i) + " = " + to_string(lambda[i]) + " outside [0, " +
                            to_string(inst.u_R(i)) + "]");
    }
  }
}

/// Bounds of G_lambda on the instance graph: edges of R_i get
/// [lambda_i, min(u, Delta_i(lambda_i))], edges of Q keep [0, u].
inline CapacityBounds build_G_lambda(const Instance& inst, std::span<const Rational> lambda) {
  check_lambda_domain(inst, lambda);
  CapacityBounds bounds;
  bounds.lower.assign(inst.num_edges(), Rational(0));
  bounds.upper = inst.capacities();
  for (std::size_t i = 0; i < inst.k(); ++i) {
    const Rational top = inst.set(i).deviation(lambda[i]);
    for (EdgeId e : inst.set(i).edges) {
      bounds.lower[e] = lambda[i];
      if (top < bounds.upper[e]) bounds.upper[e] = top;
    }
  }
  return bounds;
}

struct Evaluation {
  Rational value;
  FlowAssignment flow;
  CutReport cut;
};

/// F(lambda) with its flow and minimum cut, or nullopt when G_lambda has no
/// feasible flow.
inline std::optional<Evaluation> try_evaluate_F(const Instance& inst, std::span<const Rational> lambda) {
  const CapacityBounds bounds = build_G_lambda(inst, lambda);
  MaxFlowResult r = max_flow_bounded(inst.graph(), bounds);
  if (!r.feasible) return std::nullopt;
  Evaluation out;
  out.value = r.flow.flow_value;
  out.flow = std::move(r.flow);
  out.cut = make_cut_report(inst, std::move(r.source_side));
  return out;
}

/// F(lambda); throws Infeasible when the lower bounds cannot be met.
inline Evaluation evaluate_F(const Instance& inst, std::span<const Rational> lambda) {
  std::optional<Evaluation> e = try_evaluate_F(inst, lambda);
  if (!e) {
    std::string where;
    for (const Rational& l : lambda) where += (where.empty() ? "" : ", ") + to_string(l);
    throw Infeasible("G_lambda has no feasible flow at lambda = (" + where + ")");
  }
  return std::move(*e);
}

}  // namespace aemf
