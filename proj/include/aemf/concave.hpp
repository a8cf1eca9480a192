#pragma once

// Single homologous set with a concave deviation function.
//
// Edmonds-Karp runs on capacities that are polynomials in the unknown optimum
// lambda*. The sign of a polynomial p at lambda* is decided by locating lambda*
// among the roots of p. For a root r, F(r) is computed and compared with every
// value seen so far (memo): a better point on one side means lambda* lies on
// that side. When r itself is the best point seen, both sides stay possible and
// the run is split: this branch continues with lambda* < r, a copy (replayed
// from scratch with its own bracket) takes lambda* > r. A branch dies as soon
// as the memo rules out its whole bracket.
//
// Points are ranked by (F, -lambda), so ties prefer the smaller lambda and the
// result is the leftmost maximiser.

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <optional>
#include <vector>

#include "aemf/errors.hpp"
#include "aemf/evaluate.hpp"
#include "aemf/instance.hpp"
#include "aemf/max_flow.hpp"
#include "aemf/poly.hpp"
#include "aemf/solvers.hpp"

namespace aemf {

namespace detail {

class ToledoSearch {
 public:
  explicit ToledoSearch(const Instance& inst) : inst_(inst), u_(inst.u_R(0)) {}

  SolveResult run() {
    evaluate(Rational(0));
    evaluate(u_);
    pending_.push_back({Rational(0), u_});
    while (!pending_.empty()) {
      current_ = pending_.back();
      pending_.pop_back();
      if (!alive(current_)) continue;
      running_ = true;
      try {
        simulate_branch();
      } catch (const Cancelled&) {
      }
      running_ = false;
    }

    const Rational best = best_point();
    SolveResult out = finalize_solution(inst_, {best}, "concave");
    out.exact = !tolerance_mode_;
    out.tolerance = 0;
    if (tolerance_mode_) {
      out.tolerance = u_;
      mpq_div_2exp(out.tolerance.get_mpq_t(), out.tolerance.get_mpq_t(), 64);
    }
    out.stats = stats_;
    return out;
  }

  /// Sign of p at the optimum, narrowing (or splitting) the current branch.
  int sign_at_optimum(const PolyValue& p) {
    if (p.is_constant()) return sgn(p.coeff(0));
    for (const RootBracket& root : poly_roots(p, current_.lo, current_.hi)) {
      if (root.hi <= current_.lo || root.lo >= current_.hi) continue;
      if (root.exact()) {
        const Rational r = root.lo;
        evaluate(r);
        const Rational best = best_point();
        if (best == r) {
          pending_.push_back({r, current_.hi});
          current_.hi = r;
          ++stats_.branches;
          record_live();
        } else if (best < r) {
          current_.hi = r;
        } else {
          current_.lo = r;
        }
      } else {
        // Irrational root: both ends of its bracket become memo points, so the
        // best point decides the side; only the bracket itself is given up.
        tolerance_mode_ = true;
        evaluate(root.lo);
        evaluate(root.hi);
        const Rational best = best_point();
        if (best <= root.lo) {
          current_.hi = root.lo;
        } else {
          current_.lo = root.hi;
        }
      }
    }
    return sgn(p(Rational((current_.lo + current_.hi) / 2)));
  }

 private:
  struct Branch {
    Rational lo;
    Rational hi;
  };
  struct Cancelled {};

  struct Order {
    ToledoSearch* search;
    int sign(const PolyValue& p) const { return search->sign_at_optimum(p); }
  };

  void simulate_branch() {
    const std::size_t m = inst_.num_edges();
    const PolyValue lambda = PolyValue::identity();
    const PolyValue& delta = inst_.set(0).deviation.poly();
    const Order order{this};
    std::vector<PolyValue> lower(m);
    std::vector<PolyValue> upper(m);
    for (EdgeId e = 0; e < m; ++e) upper[e] = PolyValue(inst_.capacity(e));
    for (EdgeId e : inst_.set(0).edges) {
      lower[e] = lambda;
      if (order.sign(delta - upper[e]) < 0) upper[e] = delta;
    }
    ++stats_.simulations;
    const BoundedFlow<PolyValue> flow = bounded_max_flow<PolyValue>(inst_.graph(), lower, upper, order);

    // F equals flow.value on the whole bracket; its maximum there is at an end
    // or at the vertex of the (at most quadratic) polynomial.
    evaluate(current_.lo);
    evaluate(current_.hi);
    if (flow.feasible && flow.value.degree() == 2 && flow.value.coeff(2) < 0) {
      const Rational vertex = -flow.value.coeff(1) / (2 * flow.value.coeff(2));
      if (current_.lo < vertex && vertex < current_.hi) evaluate(vertex);
    }
  }

  /// True when `a` ranks above `b`: larger F, then smaller lambda.
  bool better(const Rational& a, const Rational& b) const {
    const std::optional<Rational>& fa = memo_.at(a);
    const std::optional<Rational>& fb = memo_.at(b);
    if (fa.has_value() != fb.has_value()) return fa.has_value();
    if (fa && *fa != *fb) return *fa > *fb;
    return a < b;
  }

  Rational best_point() const {
    auto best = memo_.begin();
    for (auto it = std::next(memo_.begin()); it != memo_.end(); ++it) {
      if (better(it->first, best->first)) best = it;
    }
    return best->first;
  }

  /// The leftmost maximiser lies strictly between the memo neighbours of the
  /// best point (or is the best point itself, which is already evaluated).
  bool alive(const Branch& b) const {
    const Rational best = best_point();
    const auto it = memo_.find(best);
    const bool has_prev = it != memo_.begin();
    const bool has_next = std::next(it) != memo_.end();
    const bool below_next = !has_next || b.lo < std::next(it)->first;
    const bool above_prev = !has_prev || std::prev(it)->first < b.hi;
    return b.lo < b.hi && below_next && above_prev;
  }

  void record_live() {
    std::size_t live = 1;
    for (const Branch& b : pending_) {
      if (alive(b)) ++live;
    }
    stats_.max_live_branches = std::max(stats_.max_live_branches, live);
  }

  void evaluate(const Rational& x) {
    if (memo_.contains(x)) return;
    ++stats_.evaluations;
    const std::vector<Rational> lambda{x};
    const std::optional<Evaluation> e = try_evaluate_F(inst_, lambda);
    memo_.emplace(x, e ? std::optional<Rational>(e->value) : std::nullopt);
    if (running_ && !alive(current_)) throw Cancelled{};
  }

  const Instance& inst_;
  Rational u_;
  std::map<Rational, std::optional<Rational>> memo_;  // F(x), nullopt where G_x is infeasible
  std::vector<Branch> pending_;
  Branch current_;
  bool running_ = false;
  bool tolerance_mode_ = false;
  SolveStats stats_{0, 0, 0, 0, 1};
};

}  // namespace detail

/// Optimum for one homologous set with a concave (degree <= 2) or affine
/// deviation function.
inline SolveResult solve_concave_single(const Instance& inst) {
  if (inst.k() != 1) throw InvalidInstance("the concave solver handles exactly one homologous set");
  const DeviationFn& dev = inst.set(0).deviation;
  if (!dev.is_concave()) {
    throw UnsupportedDeviation("deviation " + dev.to_string() + " is not concave");
  }
  detail::ToledoSearch search(inst);
  return search.run();
}

}  // namespace aemf
