#pragma once

#include <string>

#include "aemf/concave.hpp"
#include "aemf/errors.hpp"
#include "aemf/instance.hpp"
#include "aemf/solvers.hpp"

namespace aemf {

enum class Method { Auto, Parametric, Concave };

struct SolveOptions {
  Method method = Method::Auto;
  bool integer = false;
};

inline Method parse_method(const std::string& name) {
  if (name == "auto") return Method::Auto;
  if (name == "parametric") return Method::Parametric;
  if (name == "concave") return Method::Concave;
  throw InvalidInstance("unknown method '" + name + "'");
}

/// Picks a solver: affine deviations go to parametric search, a single concave
/// set to the branching search. Anything else is rejected.
inline SolveResult solve(const Instance& inst, const SolveOptions& options = {}) {
  Method method = options.method;
  if (method == Method::Auto) {
    bool linear = true;
    for (const HomologousSet& s : inst.sets()) linear = linear && s.deviation.is_linear();
    if (linear) {
      method = Method::Parametric;
    } else if (inst.k() == 1 && inst.set(0).deviation.is_concave()) {
      method = Method::Concave;
    } else {
      throw UnsupportedDeviation("no solver for these deviation functions (convex or several non-affine sets)");
    }
  }
  if (options.integer && method != Method::Parametric) {
    throw UnsupportedDeviation("integer solving needs affine deviations");
  }
  SolveResult fractional = method == Method::Parametric ? solve_k_constant(inst) : solve_concave_single(inst);
  if (!options.integer) return fractional;
  return solve_integer_constant(inst, fractional);
}

}  // namespace aemf
