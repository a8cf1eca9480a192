#pragma once

// Brute-force reference values. They share only the plain max-flow engine with
// the solvers: no symbolic values, no search.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "aemf/errors.hpp"
#include "aemf/evaluate.hpp"
#include "aemf/instance.hpp"
#include "aemf/max_flow.hpp"

namespace aemf {

struct OracleResult {
  Rational value;
  std::vector<Rational> lambda;  // a maximising candidate (first in enumeration order)
  std::size_t candidates = 0;
};

inline constexpr std::size_t kOracleBudget = 1'000'000;

namespace detail {

/// Enumerates the cross product of per-set candidate lists and maximises F.
/// Bounds are scaled to 64-bit integers when the common denominator allows it.
class GridEvaluator {
 public:
  GridEvaluator(const Instance& inst, std::vector<std::vector<Rational>> candidates, bool floor_upper)
      : inst_(inst), candidates_(std::move(candidates)), floor_upper_(floor_upper) {}

  OracleResult run(std::size_t budget) {
    std::size_t total = 1;
    for (const auto& c : candidates_) {
      if (c.empty()) throw InvalidInstance("empty candidate list");
      if (total > budget / c.size()) throw BudgetExceeded("oracle would evaluate more than " + std::to_string(budget) + " candidates");
      total *= c.size();
    }
    prepare();
    OracleResult out;
    out.candidates = total;
    std::optional<Rational> best;
    std::vector<std::size_t> digit(candidates_.size(), 0);
    while (true) {
      const std::optional<Rational> value = evaluate(digit);
      if (value && (!best || *value > *best)) {
        best = value;
        out.lambda.clear();
        for (std::size_t i = 0; i < digit.size(); ++i) out.lambda.push_back(candidates_[i][digit[i]]);
      }
      std::size_t i = 0;
      while (i < digit.size() && ++digit[i] == candidates_[i].size()) digit[i++] = 0;
      if (i == digit.size()) break;
    }
    if (!best) throw Infeasible("no candidate lambda admits a feasible flow");
    out.value = *best;
    return out;
  }

 private:
  // Upper bound on R_i edges for candidate j: Delta_i(lambda) (floored for
  // integer flows); the edge capacity still applies.
  Rational upper_for(std::size_t set, const Rational& lambda) const {
    Rational top = inst_.set(set).deviation(lambda);
    if (floor_upper_) top = Rational(floor_of(top));
    return top;
  }

  void prepare() {
    Integer den = 1;
    Rational largest = 0;
    for (const Rational& c : inst_.capacities()) {
      den = lcm(den, c.get_den());
      largest = std::max(largest, c);
    }
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      for (const Rational& l : candidates_[i]) {
        den = lcm(den, l.get_den());
        den = lcm(den, upper_for(i, l).get_den());
      }
    }
    // Flow values stay below (sum of capacities) * den; keep well inside int64.
    Rational sum = 0;
    for (const Rational& c : inst_.capacities()) sum += c;
    const Rational bound = (sum + 1) * Rational(den) * 4;
    scaled_ = bound < Rational(std::numeric_limits<std::int64_t>::max() / 4);
    scale_ = Rational(den);
    if (!scaled_) return;
    auto to_int = [this](const Rational& x) {
      const Rational y = x * scale_;
      return static_cast<std::int64_t>(y.get_num().get_si());
    };
    base_upper_.clear();
    for (const Rational& c : inst_.capacities()) base_upper_.push_back(to_int(c));
    lambda_int_.assign(candidates_.size(), {});
    top_int_.assign(candidates_.size(), {});
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
      for (const Rational& l : candidates_[i]) {
        lambda_int_[i].push_back(to_int(l));
        top_int_[i].push_back(to_int(upper_for(i, l)));
      }
    }
  }

  std::optional<Rational> evaluate(const std::vector<std::size_t>& digit) {
    if (scaled_) {
      std::vector<std::int64_t> lower(inst_.num_edges(), 0);
      std::vector<std::int64_t> upper = base_upper_;
      for (std::size_t i = 0; i < digit.size(); ++i) {
        for (EdgeId e : inst_.set(i).edges) {
          lower[e] = lambda_int_[i][digit[i]];
          upper[e] = std::min(upper[e], top_int_[i][digit[i]]);
        }
      }
      for (EdgeId e = 0; e < lower.size(); ++e) {
        if (lower[e] > upper[e]) return std::nullopt;
      }
      const NumericOrder<std::int64_t> order;
      const BoundedFlow<std::int64_t> r = bounded_max_flow<std::int64_t>(inst_.graph(), lower, upper, order);
      if (!r.feasible) return std::nullopt;
      return Rational(r.value) / scale_;
    }
    CapacityBounds bounds;
    bounds.lower.assign(inst_.num_edges(), Rational(0));
    bounds.upper = inst_.capacities();
    for (std::size_t i = 0; i < digit.size(); ++i) {
      const Rational& l = candidates_[i][digit[i]];
      const Rational top = upper_for(i, l);
      for (EdgeId e : inst_.set(i).edges) {
        bounds.lower[e] = l;
        bounds.upper[e] = std::min(bounds.upper[e], top);
        if (bounds.lower[e] > bounds.upper[e]) return std::nullopt;
      }
    }
    const MaxFlowResult r = max_flow_bounded(inst_.graph(), bounds);
    if (!r.feasible) return std::nullopt;
    return r.flow.flow_value;
  }

  const Instance& inst_;
  std::vector<std::vector<Rational>> candidates_;
  bool floor_upper_;
  bool scaled_ = false;
  Rational scale_;
  std::vector<std::int64_t> base_upper_;
  std::vector<std::vector<std::int64_t>> lambda_int_;
  std::vector<std::vector<std::int64_t>> top_int_;
};

}  // namespace detail

/// Maximum of F over all lambda_i = N/D with D in 1..m and 0 <= N/D <= u_Ri
/// (plus u_Ri itself), cross product over the sets.
inline OracleResult oracle_fractional(const Instance& inst, std::size_t budget = kOracleBudget) {
  const long m = static_cast<long>(inst.num_edges());
  std::vector<std::vector<Rational>> candidates;
  for (std::size_t i = 0; i < inst.k(); ++i) {
    const Rational u = inst.u_R(i);
    std::set<Rational> values{u};
    for (long d = 1; d <= m; ++d) {
      const Integer top = floor_of(u * d);
      if (top > Integer(static_cast<long>(budget))) throw BudgetExceeded("candidate grid too large");
      for (long n = 0; n <= top.get_si(); ++n) values.insert(ratio(n, d));
      if (values.size() > budget) throw BudgetExceeded("candidate grid too large");
    }
    candidates.emplace_back(values.begin(), values.end());
  }
  return detail::GridEvaluator(inst, std::move(candidates), false).run(budget);
}

/// Integer optimum by enumerating integer lambda_i in 0..u_Ri; flows on R_i are
/// bounded by floor(Delta_i(lambda_i)).
inline OracleResult oracle_integer(const Instance& inst, std::size_t budget = kOracleBudget) {
  for (EdgeId e = 0; e < inst.num_edges(); ++e) {
    if (!is_integral(inst.capacity(e))) throw InvalidInstance("integer oracle needs integral capacities");
  }
  std::vector<std::vector<Rational>> candidates;
  for (std::size_t i = 0; i < inst.k(); ++i) {
    const Integer top = floor_of(inst.u_R(i));
    if (top >= Integer(static_cast<long>(budget))) throw BudgetExceeded("integer range too large");
    std::vector<Rational> values;
    for (long n = 0; n <= top.get_si(); ++n) values.emplace_back(n);
    candidates.push_back(std::move(values));
  }
  return detail::GridEvaluator(inst, std::move(candidates), true).run(budget);
}

/// Leftmost maximiser of F for one set, from a dyadic grid of 1024 cells and a
/// shrinking search around the best cell down to width 2^-45 u_R. Intended for
/// concave F.
inline OracleResult oracle_concave_grid(const Instance& inst) {
  if (inst.k() != 1) throw InvalidInstance("the concave grid oracle handles one homologous set");
  const Rational u = inst.u_R(0);
  OracleResult out;
  auto f = [&](const Rational& x) -> std::optional<Rational> {
    ++out.candidates;
    const std::vector<Rational> l{x};
    std::optional<Evaluation> e = try_evaluate_F(inst, l);
    if (!e) return std::nullopt;
    return e->value;
  };
  auto at_least = [](const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!b) return true;
    return a && *a >= *b;
  };
  constexpr long cells = 1024;
  std::size_t best_cell = 0;
  std::optional<Rational> best_value;
  for (long i = 0; i <= cells; ++i) {
    const std::optional<Rational> v = f(u * ratio(i, cells));
    if (v && (!best_value || *v > *best_value)) {
      best_value = v;
      best_cell = static_cast<std::size_t>(i);
    }
  }
  Rational lo = u * ratio(std::max<long>(0, static_cast<long>(best_cell) - 1), cells);
  Rational hi = u * ratio(std::min<long>(cells, static_cast<long>(best_cell) + 1), cells);
  Rational width_goal = u;
  mpq_div_2exp(width_goal.get_mpq_t(), width_goal.get_mpq_t(), 45);
  while (hi - lo > width_goal) {
    const Rational quarter = (hi - lo) / 4;
    const Rational m1 = lo + quarter;
    const Rational m2 = hi - quarter;
    if (at_least(f(m1), f(m2))) {
      hi = m2;  // ties move left
    } else {
      lo = m1;
    }
  }
  // Best of the final bracket ends (and the grid winner when it is still inside).
  std::vector<Rational> finalists{lo, hi};
  Rational pick = lo;
  std::optional<Rational> pick_value = f(lo);
  for (const Rational& x : finalists) {
    const std::optional<Rational> v = f(x);
    if (v && (!pick_value || *v > *pick_value)) {
      pick = x;
      pick_value = v;
    }
  }
  if (!pick_value) throw Infeasible("no feasible lambda found");
  out.value = *pick_value;
  out.lambda = {pick};
  return out;
}

}  // namespace aemf
