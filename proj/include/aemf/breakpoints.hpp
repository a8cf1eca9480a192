#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <vector>

#include "aemf/errors.hpp"
#include "aemf/evaluate.hpp"
#include "aemf/instance.hpp"
#include "aemf/parametric.hpp"

namespace aemf {

/// Piecewise-linear description of F on its feasible part [0, lambda_max].
struct BreakpointProfile {
  std::vector<Rational> breakpoints;     // sorted, both ends of the feasible interval included
  std::vector<Rational> values;          // F at each breakpoint
  std::vector<Rational> segment_slopes;  // slope between consecutive breakpoints
  Rational argmax;                       // leftmost maximiser
  Rational opt_value;

  /// Kinks of F strictly inside the feasible interval.
  std::size_t interior_count() const { return breakpoints.size() < 2 ? 0 : breakpoints.size() - 2; }
};

/// F and its one-sided derivative at x, read off a symbolic run at x +/- eps.
struct SidedValue {
  bool feasible = false;
  Rational value;          // F(x), meaningful when feasible
  Rational deficit;        // infeasibility of G_x
  Rational value_slope;    // dF/dlambda on that side
  Rational deficit_slope;  // d(deficit)/dlambda on that side
};

/// `direction` is +1 for the right derivative, -1 for the left one.
inline SidedValue sided_value(const Instance& inst, const Rational& x, int direction) {
  if (inst.k() != 1 || !inst.set(0).deviation.is_linear()) {
    throw UnsupportedDeviation("one-sided slopes need a single set with an affine deviation");
  }
  detail::ParametricShared shared{inst, 1, {}};
  detail::Context ctx;
  ctx.bound = {AffineValue(x) + AffineValue::parameter(0, Rational(direction))};
  ctx.search = {nullptr};
  const detail::Outcome o = detail::simulate(shared, ctx);
  SidedValue out;
  out.feasible = o.feasible;
  out.value = o.value.constant();
  out.deficit = o.deficit.constant();
  out.value_slope = o.value.coeff(0) * direction;
  out.deficit_slope = o.deficit.coeff(0) * direction;
  return out;
}

/// Largest lambda with a feasible G_lambda. The deficit is convex and zero at
/// 0, so Newton steps along left tangents from u_R approach the root from
/// above and stop after finitely many pieces.
inline Rational feasible_end(const Instance& inst) {
  Rational x = inst.u_R(0);
  while (true) {
    const SidedValue left = sided_value(inst, x, x > 0 ? -1 : 1);
    if (left.deficit == 0) return x;
    x -= left.deficit / left.deficit_slope;
  }
}

namespace detail {

struct ProfileSweep {
  const Instance& inst;
  std::set<Rational> kinks;

  // F is linear on [a, b] iff the right slope at a equals the left slope at b;
  // otherwise the tangents meet at x*, which is the only kink in (a, b) when F
  // reaches the tangent there.
  void refine(const Rational& a, const Rational& fa, const Rational& sa, const Rational& b, const Rational& fb,
              const Rational& sb) {
    if (b <= a || sa == sb) return;
    const Rational x = (fb - fa + sa * a - sb * b) / (sa - sb);
    const SidedValue left = sided_value(inst, x, -1);
    const SidedValue right = sided_value(inst, x, 1);
    if (left.value_slope != right.value_slope) kinks.insert(x);
    if (left.value == fa + sa * (x - a)) return;
    refine(a, fa, sa, x, left.value, left.value_slope);
    refine(x, right.value, right.value_slope, b, fb, sb);
  }
};

}  // namespace detail

/// Breakpoints, values and segment slopes of F for one set with an affine
/// deviation.
inline BreakpointProfile breakpoint_profile(const Instance& inst) {
  if (inst.k() != 1) throw InvalidInstance("breakpoint profiles need exactly one homologous set");
  const Rational end = feasible_end(inst);
  BreakpointProfile out;
  std::vector<Rational> points{Rational(0)};
  if (end > 0) {
    const SidedValue start = sided_value(inst, Rational(0), 1);
    const SidedValue finish = sided_value(inst, end, -1);
    detail::ProfileSweep sweep{inst, {}};
    sweep.refine(Rational(0), start.value, start.value_slope, end, finish.value, finish.value_slope);
    points.insert(points.end(), sweep.kinks.begin(), sweep.kinks.end());
    points.push_back(end);
  }
  for (const Rational& x : points) {
    const std::vector<Rational> lambda{x};
    out.values.push_back(evaluate_F(inst, lambda).value);
  }
  out.breakpoints = std::move(points);
  for (std::size_t i = 0; i + 1 < out.breakpoints.size(); ++i) {
    out.segment_slopes.push_back((out.values[i + 1] - out.values[i]) / (out.breakpoints[i + 1] - out.breakpoints[i]));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.values.size(); ++i) {
    if (out.values[i] > out.values[best]) best = i;
  }
  out.argmax = out.breakpoints[best];
  out.opt_value = out.values[best];
  return out;
}

}  // namespace aemf
