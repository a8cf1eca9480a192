#pragma once

// Nested parametric search for constant (and, more generally, affine)
// deviation functions.
//
// Edmonds-Karp is simulated on symbolic capacities. Each homologous set i owns
// an unknown lambda_i; flow values are affine forms in those unknowns. When the
// simulation must decide the sign of a form, the innermost unknown is isolated
// (lambda_i <=> theta) and the search for lambda_i answers by locating its
// optimum relative to theta. That answer needs the one-sided slopes of the
// (inner-optimised) objective at theta, which come from running the whole
// procedure again with lambda_i bound to theta +/- eps_i, eps_i a positive
// infinitesimal. Infinitesimals of deeper levels are smaller:
// eps_{k-1} << ... << eps_0.
//
// Parameter layout inside AffineValue: eps_j at index j, lambda_j at index
// k + j, so eliminating the highest index first resolves unknown lambdas
// innermost-first and then the infinitesimals smallest-first.
//
// The objective is lexicographic (-deficit, value): where G_lambda has no
// feasible flow the search moves towards smaller deficit. Among optimal
// lambda_i the leftmost is chosen.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "aemf/affine.hpp"
#include "aemf/errors.hpp"
#include "aemf/instance.hpp"
#include "aemf/max_flow.hpp"

namespace aemf {

/// Counters collected during a parametric solve.
struct ParametricStats {
  std::size_t simulations = 0;      // symbolic max-flow runs
  std::size_t resolutions = 0;      // comparisons that needed slope evaluations
  std::size_t comparisons = 0;      // comparisons reaching a search (bracket checks included)
};

namespace detail {

class LevelSearch;

struct ParametricShared {
  const Instance& inst;
  std::size_t k;
  ParametricStats stats;

  std::size_t eps(std::size_t j) const { return j; }
  std::size_t lam(std::size_t j) const { return k + j; }
};

struct Context {
  std::vector<std::optional<AffineValue>> bound;  // per set; nullopt while searched
  std::vector<LevelSearch*> search;                // per set; non-null while searched
};

struct Outcome {
  bool feasible = false;
  AffineValue deficit;
  AffineValue value;
  std::vector<AffineValue> flow;
  std::vector<bool> source_side;
  std::vector<AffineValue> lambda;
};

std::strong_ordering locate_in(LevelSearch& search, const AffineValue& theta);

/// Sign oracle for one context.
class ContextOrder {
 public:
  ContextOrder(ParametricShared& shared, const Context& ctx) : shared_(shared), ctx_(ctx) {
    resolver_ = [this](std::size_t index, const AffineValue& theta) { return resolve(index, theta); };
  }
  ContextOrder(const ContextOrder&) = delete;
  ContextOrder& operator=(const ContextOrder&) = delete;

  int sign(const AffineValue& v) const { return affine_sign(v, resolver_); }
  std::strong_ordering compare(const AffineValue& a, const AffineValue& b) const {
    return affine_compare(a, b, resolver_);
  }

 private:
  std::strong_ordering resolve(std::size_t index, const AffineValue& theta) const {
    if (index < shared_.k) {
      // eps_index against a form in larger infinitesimals: positive forms are
      // bigger than eps_index, everything else is smaller.
      return sign(theta) > 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    LevelSearch* search = ctx_.search.at(index - shared_.k);
    if (search == nullptr) throw std::logic_error("comparison on a bound parameter");
    return locate_in(*search, theta);
  }

  ParametricShared& shared_;
  const Context& ctx_;
  ThresholdResolver resolver_;
};

inline Outcome simulate(ParametricShared& shared, const Context& ctx) {
  ++shared.stats.simulations;
  const Instance& inst = shared.inst;
  const ContextOrder order(shared, ctx);
  const std::size_t m = inst.num_edges();

  std::vector<AffineValue> lambda(shared.k);
  for (std::size_t i = 0; i < shared.k; ++i) {
    lambda[i] = ctx.bound[i] ? *ctx.bound[i] : AffineValue::parameter(shared.lam(i));
  }
  std::vector<AffineValue> lower(m);
  std::vector<AffineValue> upper(m);
  for (EdgeId e = 0; e < m; ++e) upper[e] = inst.capacity(e);
  for (std::size_t i = 0; i < shared.k; ++i) {
    const DeviationFn& dev = inst.set(i).deviation;
    AffineValue top = lambda[i] * dev.slope();
    top += AffineValue(dev.intercept());
    for (EdgeId e : inst.set(i).edges) {
      lower[e] = lambda[i];
      if (order.sign(top - upper[e]) < 0) upper[e] = top;
    }
  }

  BoundedFlow<AffineValue> raw = bounded_max_flow<AffineValue>(inst.graph(), lower, upper, order);
  Outcome out;
  out.feasible = raw.feasible;
  out.deficit = std::move(raw.deficit);
  out.value = std::move(raw.value);
  out.flow = std::move(raw.flow);
  out.source_side = std::move(raw.source_side);
  out.lambda = std::move(lambda);
  return out;
}

Outcome solve_level(ParametricShared& shared, const Context& ctx, std::size_t level);

/// Lexicographic sign of the pair (a, b).
inline int lex_sign(const Rational& a, const Rational& b) {
  if (a != 0) return sgn(a);
  return sgn(b);
}

/// Search for the optimal lambda_j of one context.
class LevelSearch {
 public:
  LevelSearch(ParametricShared& shared, const Context& outer, std::size_t level)
      : shared_(shared), outer_(outer), level_(level), outer_order_(shared, outer),
        lo_(Rational(0)), hi_(shared.inst.u_R(level)) {}

  Outcome run() {
    Context inner = outer_;
    inner.bound[level_].reset();
    inner.search[level_] = this;
    const Outcome sim = solve_level(shared_, inner, level_ + 1);

    const std::size_t p = shared_.lam(level_);
    AffineValue chosen;
    if (known_) {
      chosen = *known_;
    } else {
      const Rational grow = sim.feasible ? sim.value.coeff(p) : Rational(0);
      chosen = lex_sign(-sim.deficit.coeff(p), grow) > 0 ? hi_ : lo_;
    }
    if (!sim.feasible) return evaluate_at(chosen);
    // The simulated run is valid on the open bracket (or exactly at the known
    // optimum); value and flow are continuous, so substituting the endpoint
    // gives the run at the optimum.
    Outcome out = sim;
    out.value = out.value.substitute(p, chosen);
    out.deficit = out.deficit.substitute(p, chosen);
    for (AffineValue& f : out.flow) f = f.substitute(p, chosen);
    for (AffineValue& l : out.lambda) l = l.substitute(p, chosen);
    return out;
  }

  /// Where the optimal lambda_j lies relative to theta.
  std::strong_ordering locate(const AffineValue& theta) {
    ++shared_.stats.comparisons;
    // Infinitesimals of this level or deeper cannot move the optimum; they
    // only break a tie with the remaining part of theta.
    AffineValue base = theta;
    for (std::size_t j = level_; j < shared_.k && base.width() > j; ++j) base = base.without(shared_.eps(j));
    const std::strong_ordering where = locate_clean(base);
    if (where != std::strong_ordering::equal) return where;
    const AffineValue tail = theta - base;
    const int s = outer_order_.sign(tail);
    if (s > 0) return std::strong_ordering::less;
    if (s < 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  enum class Verdict { Left, Right, At };

  Outcome evaluate_at(const AffineValue& point) {
    Context bound = outer_;
    bound.bound[level_] = point;
    bound.search[level_] = nullptr;
    return solve_level(shared_, bound, level_ + 1);
  }

  std::strong_ordering locate_clean(const AffineValue& theta) {
    if (auto hit = memo_.find(theta); hit != memo_.end()) return hit->second;
    const std::strong_ordering answer = decide(theta);
    memo_.emplace(theta, answer);
    return answer;
  }

  std::strong_ordering decide(const AffineValue& theta) {
    if (known_) return outer_order_.compare(*known_, theta);

    const std::strong_ordering vs_lo = outer_order_.compare(theta, lo_);
    if (vs_lo < 0 || (vs_lo == 0 && lo_open_)) return std::strong_ordering::greater;
    const std::strong_ordering vs_hi = outer_order_.compare(theta, hi_);
    if (vs_hi > 0 || (vs_hi == 0 && hi_open_)) return std::strong_ordering::less;

    switch (classify(theta, vs_lo == 0, vs_hi == 0)) {
      case Verdict::Right:
        lo_ = theta;
        lo_open_ = true;
        return std::strong_ordering::greater;
      case Verdict::Left:
        hi_ = theta;
        hi_open_ = true;
        return std::strong_ordering::less;
      case Verdict::At:
        break;
    }
    known_ = theta;
    return std::strong_ordering::equal;
  }

  /// One-sided slope test at theta (theta inside the closed bracket).
  Verdict classify(const AffineValue& theta, bool at_lower_end, bool at_upper_end) {
    ++shared_.stats.resolutions;
    const std::size_t eps = shared_.eps(level_);
    const Rational& u = shared_.inst.u_R(level_);
    const bool at_zero = at_lower_end && outer_order_.sign(theta) == 0;
    const bool at_cap = at_upper_end && outer_order_.compare(theta, AffineValue(u)) == 0;

    if (!at_cap) {
      const Outcome right = evaluate_at(theta + AffineValue::parameter(eps));
      const Rational grow = right.feasible ? right.value.coeff(eps) : Rational(0);
      if (lex_sign(-right.deficit.coeff(eps), grow) > 0) return Verdict::Right;
    }
    if (!at_zero) {
      const Outcome left = evaluate_at(theta - AffineValue::parameter(eps));
      // Coefficients of eps at theta - eps are the negated left derivatives.
      const Rational grow = left.feasible ? left.value.coeff(eps) : Rational(0);
      if (lex_sign(-left.deficit.coeff(eps), grow) >= 0) return Verdict::Left;
    }
    return Verdict::At;
  }

  ParametricShared& shared_;
  const Context& outer_;
  std::size_t level_;
  ContextOrder outer_order_;
  AffineValue lo_;
  AffineValue hi_;
  bool lo_open_ = false;
  bool hi_open_ = false;
  std::optional<AffineValue> known_;
  std::map<AffineValue, std::strong_ordering, AffineRepresentationLess> memo_;
};

inline std::strong_ordering locate_in(LevelSearch& search, const AffineValue& theta) { return search.locate(theta); }

inline Outcome solve_level(ParametricShared& shared, const Context& ctx, std::size_t level) {
  if (level == shared.k) return simulate(shared, ctx);
  if (ctx.bound[level]) return solve_level(shared, ctx, level + 1);
  LevelSearch search(shared, ctx, level);
  return search.run();
}

}  // namespace detail

struct ParametricOptimum {
  std::vector<Rational> lambda;
  ParametricStats stats;
};

/// Leftmost (in set order) optimal lambda vector by nested parametric search.
/// Deviation functions must be affine (constant shifts included).
inline ParametricOptimum parametric_optimum(const Instance& inst) {
  for (std::size_t i = 0; i < inst.k(); ++i) {
    if (!inst.set(i).deviation.is_linear()) {
      throw UnsupportedDeviation("parametric search needs affine deviations; set " + std::to_string(i) + " has " +
                                 inst.set(i).deviation.to_string());
    }
  }
  detail::ParametricShared shared{inst, inst.k(), {}};
  detail::Context root;
  root.bound.assign(inst.k(), std::nullopt);
  root.search.assign(inst.k(), nullptr);
  const detail::Outcome result = detail::solve_level(shared, root, 0);

  ParametricOptimum out;
  out.stats = shared.stats;
  for (const AffineValue& l : result.lambda) {
    if (!l.is_constant()) throw std::logic_error("parametric search left a symbolic lambda: " + l.to_string());
    out.lambda.push_back(l.constant());
  }
  return out;
}

}  // namespace aemf
