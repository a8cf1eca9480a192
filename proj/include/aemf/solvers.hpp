#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aemf/breakpoints.hpp"
#include "aemf/cut.hpp"
#include "aemf/errors.hpp"
#include "aemf/evaluate.hpp"
#include "aemf/instance.hpp"
#include "aemf/parametric.hpp"

namespace aemf {

struct SolveStats {
  std::size_t simulations = 0;
  std::size_t resolutions = 0;
  std::size_t evaluations = 0;
  std::size_t branches = 0;
  std::size_t max_live_branches = 0;
};

struct SolveResult {
  std::vector<Rational> lambda_star;
  FlowAssignment flow;
  Rational opt_value;
  CutReport certificate;
  std::string method;
  bool integral = false;
  bool exact = true;  // false when an irrational threshold was bracketed
  Rational tolerance; // bound on |lambda* error| when not exact
  SolveStats stats;
  std::optional<BreakpointProfile> profile;
};

/// Evaluates F at `lambda` and packages the flow and its minimum cut.
inline SolveResult finalize_solution(const Instance& inst, std::vector<Rational> lambda, std::string method) {
  Evaluation e = evaluate_F(inst, lambda);
  SolveResult out;
  out.lambda_star = std::move(lambda);
  out.opt_value = e.value;
  out.flow = std::move(e.flow);
  out.certificate = std::move(e.cut);
  out.method = std::move(method);
  return out;
}

struct ComparisonResult {
  enum class Kind { OptLeft, OptRight, OptimalAt };
  Kind kind;
  Rational lambda_star;  // OptimalAt only
};

/// Perturbation width 1/(2 m^2 D^2), D the lcm of capacity and deviation
/// denominators.
inline Rational perturbation_width(const Instance& inst) {
  Integer d = 1;
  for (const Rational& c : inst.capacities()) d = lcm(d, c.get_den());
  for (const HomologousSet& s : inst.sets()) {
    for (const Rational& c : s.deviation.poly().coeffs()) d = lcm(d, c.get_den());
  }
  const Integer m(static_cast<unsigned long>(inst.num_edges()));
  return Rational(Integer(1), Integer(2 * m * m * d * d));
}

/// Locates the optimal lambda of set `set_index` relative to lambda[set_index]
/// with the other coordinates fixed, from the minimum cuts just left and right
/// of it: both cut slopes positive means the optimum is to the right, a
/// nonpositive left slope means it is to the left (leftmost convention),
/// otherwise the optimum is where the two cut lines meet.
/// Near the domain boundary the probes are clamped to [0, u_R].
inline ComparisonResult resolve_comparison(const Instance& inst, std::span<const Rational> lambda,
                                           std::size_t set_index) {
  check_lambda_domain(inst, lambda);
  if (set_index >= inst.k()) throw InvalidInstance("set index out of range");
  if (!inst.set(set_index).deviation.is_linear()) {
    throw UnsupportedDeviation("comparison resolution needs an affine deviation");
  }
  const Rational at = lambda[set_index];
  const Rational w = perturbation_width(inst);
  const Rational u = inst.u_R(set_index);
  std::vector<Rational> probe(lambda.begin(), lambda.end());
  auto eval = [&](const Rational& x) {
    probe[set_index] = x;
    return try_evaluate_F(inst, probe);
  };
  // Slope of a cut's capacity on the segment between x and `at`.
  auto slope = [&](const CutReport& cut, const Rational& x) {
    std::vector<Rational> p(lambda.begin(), lambda.end());
    p[set_index] = x;
    const Rational gx = cut_capacity_at(cut, p);
    p[set_index] = at;
    const Rational ga = cut_capacity_at(cut, p);
    return Rational((ga - gx) / (at - x));
  };

  const Rational x1 = std::max(Rational(0), Rational(at - w));
  const Rational x2 = std::min(u, Rational(at + w));
  const std::optional<Evaluation> here = eval(at);
  if (!here) return {ComparisonResult::Kind::OptLeft, {}};

  std::optional<Rational> s2;
  std::optional<Evaluation> right;
  if (x2 > at) {
    right = eval(x2);
    if (right) {
      s2 = slope(right->cut, x2);
      if (*s2 > 0) return {ComparisonResult::Kind::OptRight, {}};
    }
  }
  if (x1 < at) {
    const std::optional<Evaluation> left = eval(x1);
    const Rational s1 = slope(left->cut, x1);
    if (s1 <= 0) return {ComparisonResult::Kind::OptLeft, {}};
    if (s2 && *s2 != s1) {
      // Intersection of the two cut lines through (x1, F(x1)) and (x2, F(x2)).
      const Rational star = (right->value - left->value + s1 * x1 - *s2 * x2) / (s1 - *s2);
      return {ComparisonResult::Kind::OptimalAt, star};
    }
  }
  return {ComparisonResult::Kind::OptimalAt, at};
}

inline ComparisonResult resolve_comparison(const Instance& inst, const Rational& lambda) {
  const std::vector<Rational> point{lambda};
  return resolve_comparison(inst, point, 0);
}

inline void require_linear(const Instance& inst, const char* what) {
  for (std::size_t i = 0; i < inst.k(); ++i) {
    if (!inst.set(i).deviation.is_linear()) {
      throw UnsupportedDeviation(std::string(what) + " needs affine or constant deviations; set " +
                                 std::to_string(i) + " has " + inst.set(i).deviation.to_string());
    }
  }
}

/// Joint optimum for k sets with affine deviations by nested parametric
/// search. Ties are broken towards the smallest lambda, outermost set first.
inline SolveResult solve_k_constant(const Instance& inst) {
  require_linear(inst, "parametric search");
  ParametricOptimum opt = parametric_optimum(inst);
  SolveResult out = finalize_solution(inst, std::move(opt.lambda), "parametric");
  out.stats.simulations = opt.stats.simulations;
  out.stats.resolutions = opt.stats.resolutions;
  return out;
}

/// One homologous set with Delta(x) = x + c: parametric search plus the
/// breakpoint profile of F.
inline SolveResult solve_simple_constant(const Instance& inst) {
  if (inst.k() != 1) throw InvalidInstance("the simple solver needs exactly one homologous set");
  if (!inst.set(0).deviation.is_constant_shift()) {
    throw UnsupportedDeviation("the simple solver needs a constant deviation x + c");
  }
  SolveResult out = solve_k_constant(inst);
  out.profile = breakpoint_profile(inst);
  return out;
}

/// Integer optimum from a fractional one: evaluates every floor/ceil corner of
/// lambda* (2^k candidates, duplicates skipped) and keeps the best feasible
/// one, preferring lexicographically smaller lambda on ties.
inline SolveResult solve_integer_constant(const Instance& inst, const SolveResult& fractional) {
  require_linear(inst, "integer rounding");
  if (!inst.integral_data()) throw InvalidInstance("integer solving needs integral capacities and deviations");
  const std::size_t k = inst.k();
  std::vector<std::vector<Rational>> choices(k);
  for (std::size_t i = 0; i < k; ++i) {
    const Rational lo(floor_of(fractional.lambda_star[i]));
    const Rational hi(ceil_of(fractional.lambda_star[i]));
    choices[i].push_back(lo);
    if (hi != lo) choices[i].push_back(hi);
  }
  std::optional<Evaluation> best;
  std::vector<Rational> best_lambda;
  std::size_t evaluations = 0;
  std::vector<std::size_t> digit(k, 0);
  while (true) {
    std::vector<Rational> lambda(k);
    for (std::size_t i = 0; i < k; ++i) lambda[i] = choices[i][digit[i]];
    ++evaluations;
    std::optional<Evaluation> e = try_evaluate_F(inst, lambda);
    if (e && (!best || e->value > best->value || (e->value == best->value && lambda < best_lambda))) {
      best = std::move(e);
      best_lambda = lambda;
    }
    std::size_t i = 0;
    while (i < k && ++digit[i] == choices[i].size()) digit[i++] = 0;
    if (i == k) break;
  }
  if (!best) {
    best_lambda.assign(k, Rational(0));
    best = evaluate_F(inst, best_lambda);
  }
  SolveResult out;
  out.lambda_star = std::move(best_lambda);
  out.opt_value = best->value;
  out.flow = std::move(best->flow);
  out.certificate = std::move(best->cut);
  out.method = fractional.method + "+rounding";
  out.integral = true;
  out.stats = fractional.stats;
  out.stats.evaluations += evaluations;
  return out;
}

}  // namespace aemf
