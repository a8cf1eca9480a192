#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "aemf/rational.hpp"

namespace aemf {

/// a + sum_i b_i * p_i over parameters p_0, p_1, ... with exact rational
/// coefficients. Only nonzero coefficients are stored (sorted by index), so
/// equal values have equal representations.
class AffineValue {
 public:
  AffineValue() = default;
  AffineValue(Rational constant) : constant_(std::move(constant)) {}  // NOLINT: implicit on purpose
  AffineValue(Rational constant, const std::vector<Rational>& coeffs) : constant_(std::move(constant)) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      if (coeffs[i] != 0) terms_.push_back({i, coeffs[i]});
    }
  }

  static AffineValue parameter(std::size_t index, Rational scale = 1) {
    AffineValue v;
    if (scale != 0) v.terms_.push_back({index, std::move(scale)});
    return v;
  }

  const Rational& constant() const { return constant_; }

  const Rational& coeff(std::size_t index) const {
    static const Rational zero(0);
    const auto it = find(index);
    return it != terms_.end() && it->index == index ? it->value : zero;
  }

  /// One past the highest parameter with a nonzero coefficient.
  std::size_t width() const { return terms_.empty() ? 0 : terms_.back().index + 1; }
  bool is_constant() const { return terms_.empty(); }

  AffineValue& operator+=(const AffineValue& o) { return combine(o, 1); }
  AffineValue& operator-=(const AffineValue& o) { return combine(o, -1); }

  AffineValue& operator*=(const Rational& s) {
    if (s == 0) {
      constant_ = 0;
      terms_.clear();
      return *this;
    }
    constant_ *= s;
    for (Term& t : terms_) t.value *= s;
    return *this;
  }

  friend AffineValue operator+(AffineValue a, const AffineValue& b) { return a += b; }
  friend AffineValue operator-(AffineValue a, const AffineValue& b) { return a -= b; }
  friend AffineValue operator*(AffineValue a, const Rational& s) { return a *= s; }
  friend AffineValue operator-(AffineValue a) { return a *= Rational(-1); }

  /// Copy with the coefficient of `index` cleared.
  AffineValue without(std::size_t index) const {
    AffineValue v = *this;
    const auto it = v.find(index);
    if (it != v.terms_.end() && it->index == index) v.terms_.erase(it);
    return v;
  }

  /// Replaces parameter `index` by `replacement`.
  AffineValue substitute(std::size_t index, const AffineValue& replacement) const {
    const Rational& c = coeff(index);
    if (c == 0) return *this;
    AffineValue v = without(index);
    v += replacement * c;
    return v;
  }

  Rational evaluate(std::span<const Rational> point) const {
    Rational total = constant_;
    for (const Term& t : terms_) total += t.value * point[t.index];
    return total;
  }

  friend bool operator==(const AffineValue& a, const AffineValue& b) {
    return a.constant_ == b.constant_ && a.terms_ == b.terms_;
  }

  /// Total order on representations (for use as map keys).
  friend bool representation_less(const AffineValue& a, const AffineValue& b) {
    if (a.constant_ != b.constant_) return a.constant_ < b.constant_;
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
    for (std::size_t i = 0; i < a.terms_.size(); ++i) {
      if (a.terms_[i].index != b.terms_[i].index) return a.terms_[i].index < b.terms_[i].index;
      if (a.terms_[i].value != b.terms_[i].value) return a.terms_[i].value < b.terms_[i].value;
    }
    return false;
  }

  std::string to_string() const {
    std::string out = aemf::to_string(constant_);
    for (const Term& t : terms_) {
      out += t.value > 0 ? " + " : " - ";
      Rational magnitude = abs(t.value);
      out += aemf::to_string(magnitude) + "*p" + std::to_string(t.index);
    }
    return out;
  }

 private:
  struct Term {
    std::size_t index;
    Rational value;
    friend bool operator==(const Term& a, const Term& b) { return a.index == b.index && a.value == b.value; }
  };

  std::vector<Term>::const_iterator find(std::size_t index) const {
    return std::lower_bound(terms_.begin(), terms_.end(), index,
                            [](const Term& t, std::size_t i) { return t.index < i; });
  }
  std::vector<Term>::iterator find(std::size_t index) {
    return std::lower_bound(terms_.begin(), terms_.end(), index,
                            [](const Term& t, std::size_t i) { return t.index < i; });
  }

  AffineValue& combine(const AffineValue& o, int sign) {
    if (sign > 0) {
      constant_ += o.constant_;
    } else {
      constant_ -= o.constant_;
    }
    if (o.terms_.empty()) return *this;
    std::vector<Term> merged;
    merged.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() || (i < terms_.size() && terms_[i].index < o.terms_[j].index)) {
        merged.push_back(std::move(terms_[i++]));
      } else if (i == terms_.size() || o.terms_[j].index < terms_[i].index) {
        merged.push_back({o.terms_[j].index, sign > 0 ? o.terms_[j].value : Rational(-o.terms_[j].value)});
        ++j;
      } else {
        Term t = std::move(terms_[i++]);
        if (sign > 0) {
          t.value += o.terms_[j++].value;
        } else {
          t.value -= o.terms_[j++].value;
        }
        if (t.value != 0) merged.push_back(std::move(t));
      }
    }
    terms_ = std::move(merged);
    return *this;
  }

  Rational constant_{0};
  std::vector<Term> terms_;
};

struct AffineRepresentationLess {
  bool operator()(const AffineValue& a, const AffineValue& b) const { return representation_less(a, b); }
};

/// Locates the unknown value of parameter `index` relative to `threshold`,
/// which only involves parameters below `index`. Returns the ordering of
/// (unknown value) <=> (threshold).
using ThresholdResolver = std::function<std::strong_ordering(std::size_t index, const AffineValue& threshold)>;

/// Sign of `value` at the unknown parameter point.
///
/// The innermost (highest-index) parameter is eliminated first: writing
/// value = b * (p - theta), the question value > 0 becomes p > theta, which the
/// resolver answers. Constant values never reach the resolver.
inline int affine_sign(const AffineValue& value, const ThresholdResolver& resolver) {
  const std::size_t top = value.width();
  if (top == 0) return sgn(value.constant());
  const std::size_t index = top - 1;
  const Rational b = value.coeff(index);
  AffineValue threshold = value.without(index);
  threshold *= Rational(-1) / b;
  const std::strong_ordering where = resolver(index, threshold);
  if (where == std::strong_ordering::equal) return 0;
  const int side = where == std::strong_ordering::greater ? 1 : -1;
  return b > 0 ? side : -side;
}

/// lhs <=> rhs at the unknown parameter point. For a single parameter this is
/// the threshold test lambda <=> (a2 - a1) / (b1 - b2); equal coefficients
/// reduce to a plain rational comparison.
inline std::strong_ordering affine_compare(const AffineValue& lhs, const AffineValue& rhs,
                                           const ThresholdResolver& resolver) {
  const int s = affine_sign(lhs - rhs, resolver);
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace aemf
