#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "aemf/deviation.hpp"
#include "aemf/instance.hpp"
#include "aemf/rational.hpp"

namespace aemf {

/// An s-t cut S together with everything needed to evaluate its capacity in
/// G_lambda as a function of lambda:
///
///   g_S(lambda) = capacity_const
///               + sum_i sum_{r in forward[i]} min(u(r), Delta_i(lambda_i))
///               - sum_i backward[i] * lambda_i
struct CutReport {
  std::vector<bool> s_side;
  Rational capacity_const;                     // u of Q-edges leaving S
  std::vector<long> d_R;                       // |out(S) in R_i| - |in(S) in R_i|
  std::vector<std::vector<Rational>> forward;  // capacities of R_i-edges leaving S
  std::vector<long> backward;                  // number of R_i-edges entering S
  std::vector<DeviationFn> deviations;
};

inline CutReport make_cut_report(const Instance& inst, std::vector<bool> s_side) {
  CutReport report;
  report.s_side = std::move(s_side);
  report.capacity_const = 0;
  report.d_R.assign(inst.k(), 0);
  report.forward.assign(inst.k(), {});
  report.backward.assign(inst.k(), 0);
  for (const HomologousSet& set : inst.sets()) report.deviations.push_back(set.deviation);
  const Graph& g = inst.graph();
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const bool tail_in = report.s_side[g.edge(e).tail];
    const bool head_in = report.s_side[g.edge(e).head];
    if (tail_in == head_in) continue;
    const std::size_t set = inst.set_of(e);
    if (set == kNoSet) {
      if (tail_in) report.capacity_const += inst.capacity(e);
    } else if (tail_in) {
      report.forward[set].push_back(inst.capacity(e));
      ++report.d_R[set];
    } else {
      ++report.backward[set];
      --report.d_R[set];
    }
  }
  return report;
}

inline Rational cut_capacity_at(const CutReport& report, std::span<const Rational> lambda) {
  Rational total = report.capacity_const;
  for (std::size_t i = 0; i < report.d_R.size(); ++i) {
    const Rational upper = report.deviations[i](lambda[i]);
    for (const Rational& u : report.forward[i]) total += std::min(u, upper);
    total -= report.backward[i] * lambda[i];
  }
  return total;
}

}  // namespace aemf
