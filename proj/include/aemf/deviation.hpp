#pragma once

#include <string>
#include <vector>

#include "aemf/errors.hpp"
#include "aemf/poly.hpp"
#include "aemf/rational.hpp"

namespace aemf {

/// Deviation function Delta of a homologous set: every flow in the set lies in
/// [lambda, Delta(lambda)] where lambda is the smallest flow in the set.
class DeviationFn {
 public:
  enum class Kind { ConstantShift, Affine, Polynomial };

  static DeviationFn constant_shift(Rational c) {
    if (c < 0) throw InvalidInstance("constant deviation must be nonnegative");
    return DeviationFn(Kind::ConstantShift, PolyValue(std::vector<Rational>{c, Rational(1)}));
  }

  static DeviationFn affine(Rational slope, Rational intercept) {
    if (slope < 1) throw InvalidInstance("affine deviation slope must be at least 1");
    if (intercept < 0) throw InvalidInstance("affine deviation intercept must be nonnegative");
    return DeviationFn(Kind::Affine, PolyValue(std::vector<Rational>{intercept, slope}));
  }

  /// c0 + c1 x + ... ; monotonicity and Delta(x) >= x are checked against a
  /// concrete domain with `validate_on`.
  static DeviationFn polynomial(std::vector<Rational> coeffs) {
    if (coeffs.empty()) throw InvalidInstance("polynomial deviation needs coefficients");
    const std::size_t degree = coeffs.size() - 1;
    return DeviationFn(Kind::Polynomial, PolyValue(std::move(coeffs)), degree);
  }

  Kind kind() const { return kind_; }
  const PolyValue& poly() const { return poly_; }

  /// Declared degree of a polynomial deviation (coefficients as written).
  std::size_t declared_degree() const { return declared_degree_; }

  Rational operator()(const Rational& x) const { return poly_(x); }

  /// Shift c when Delta(x) = x + c.
  bool is_constant_shift() const { return kind_ == Kind::ConstantShift; }
  Rational shift() const { return poly_.coeff(0); }

  /// Delta is affine in x (constant shift, affine, or a polynomial of degree <= 1).
  bool is_linear() const { return poly_.degree() <= 1; }
  Rational slope() const { return poly_.coeff(1); }
  Rational intercept() const { return poly_.coeff(0); }

  bool is_concave() const { return poly_.degree() <= 1 || (poly_.degree() == 2 && poly_.coeff(2) <= 0); }

  /// Checks that Delta is nondecreasing and Delta(x) >= x on [0, bound].
  void validate_on(const Rational& bound) const {
    if (kind_ != Kind::Polynomial) return;
    const PolyValue derivative = poly_.derivative();
    if (!nonnegative_on(derivative, bound)) {
      throw InvalidInstance("deviation " + to_string() + " is not monotone on [0, " + aemf::to_string(bound) + "]");
    }
    if (!nonnegative_on(poly_ - PolyValue::identity(), bound)) {
      throw InvalidInstance("deviation " + to_string() + " drops below x on [0, " + aemf::to_string(bound) + "]");
    }
  }

  std::string to_string() const {
    switch (kind_) {
      case Kind::ConstantShift:
        return "x + " + aemf::to_string(shift());
      case Kind::Affine:
        return aemf::to_string(slope()) + "x + " + aemf::to_string(intercept());
      case Kind::Polynomial:
        return poly_.to_string();
    }
    return {};
  }

  friend bool operator==(const DeviationFn& a, const DeviationFn& b) {
    return a.kind_ == b.kind_ && a.poly_ == b.poly_ && a.declared_degree_ == b.declared_degree_;
  }

 private:
  DeviationFn(Kind kind, PolyValue poly, std::size_t declared_degree = 1)
      : kind_(kind), poly_(std::move(poly)), declared_degree_(declared_degree) {}

  // A polynomial is nonnegative on [0, b] iff it is at its endpoints and at
  // every interior local minimum; local minima sit at roots of the derivative.
  static bool nonnegative_on(const PolyValue& p, const Rational& b) {
    if (p(Rational(0)) < 0 || p(b) < 0) return false;
    if (p.degree() <= 1) return true;
    for (const RootBracket& r : poly_roots(p.derivative(), Rational(0), b)) {
      if (r.exact()) {
        if (p(r.lo) < 0) return false;
      } else if (p(r.lo) < 0 && p(r.hi) < 0) {
        return false;
      }
    }
    return true;
  }

  Kind kind_;
  PolyValue poly_;
  std::size_t declared_degree_;
};

}  // namespace aemf
