#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "aemf/rational.hpp"

namespace aemf {

/// Univariate polynomial c0 + c1 x + ... with exact coefficients. Flow updates
/// only add and subtract, so the degree never grows past the deviation degree.
class PolyValue {
 public:
  PolyValue() = default;
  PolyValue(Rational constant) {  // NOLINT: implicit on purpose
    if (constant != 0) coeffs_.push_back(std::move(constant));
  }
  explicit PolyValue(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static PolyValue identity() { return PolyValue(std::vector<Rational>{Rational(0), Rational(1)}); }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  bool is_constant() const { return coeffs_.size() <= 1; }

  Rational operator()(const Rational& x) const {
    Rational total = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      total *= x;
      total += coeffs_[i];
    }
    return total;
  }

  PolyValue derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) d.push_back(coeffs_[i] * Rational(static_cast<long>(i)));
    return PolyValue(std::move(d));
  }

  /// p(x + shift) expanded as a polynomial in x.
  PolyValue shifted(const Rational& shift) const {
    // Horner with polynomial arithmetic: p(x+s) = (...(c_n (x+s) + c_{n-1})(x+s) + ...).
    std::vector<Rational> out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      std::vector<Rational> next(out.size() + 1, Rational(0));
      for (std::size_t j = 0; j < out.size(); ++j) {
        next[j + 1] += out[j];
        next[j] += out[j] * shift;
      }
      next[0] += coeffs_[i];
      out = std::move(next);
    }
    return PolyValue(std::move(out));
  }

  PolyValue& operator+=(const PolyValue& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
  }
  PolyValue& operator-=(const PolyValue& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
  }
  PolyValue& operator*=(const Rational& s) {
    for (Rational& c : coeffs_) c *= s;
    trim();
    return *this;
  }
  friend PolyValue operator+(PolyValue a, const PolyValue& b) { return a += b; }
  friend PolyValue operator-(PolyValue a, const PolyValue& b) { return a -= b; }
  friend PolyValue operator*(PolyValue a, const Rational& s) { return a *= s; }
  friend bool operator==(const PolyValue& a, const PolyValue& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const {
    if (coeffs_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      if (coeffs_[i] == 0) continue;
      if (!out.empty()) out += " + ";
      out += aemf::to_string(coeffs_[i]);
      if (i >= 1) out += "*x";
      if (i >= 2) out += "^" + std::to_string(i);
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Rational> coeffs_;
};

/// A real root known exactly (lo == hi) or enclosed in [lo, hi].
struct RootBracket {
  Rational lo;
  Rational hi;
  bool exact() const { return lo == hi; }
  Rational midpoint() const { return Rational((lo + hi) / 2); }
};

namespace detail {

inline bool rational_sqrt(const Rational& x, Rational& root) {
  if (x < 0) return false;
  if (mpz_perfect_square_p(x.get_num_mpz_t()) == 0 || mpz_perfect_square_p(x.get_den_mpz_t()) == 0) {
    return false;
  }
  Integer n;
  Integer d;
  mpz_sqrt(n.get_mpz_t(), x.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), x.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

/// Root of a polynomial that changes sign on [lo, hi] (strictly monotone
/// there), bisected until the enclosure is at most `width`.
inline RootBracket bisect_root(const PolyValue& p, Rational lo, Rational hi, const Rational& width) {
  int slo = sgn(p(lo));
  if (slo == 0) return {lo, lo};
  if (sgn(p(hi)) == 0) return {hi, hi};
  while (hi - lo > width) {
    Rational mid = (lo + hi) / 2;
    const int s = sgn(p(mid));
    if (s == 0) return {mid, mid};
    if (s == slo) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return {lo, hi};
}

inline void add_root(std::vector<RootBracket>& roots, RootBracket r) {
  for (const RootBracket& existing : roots) {
    if (!(r.hi < existing.lo || existing.hi < r.lo)) return;  // overlaps: same root
  }
  roots.push_back(std::move(r));
}

}  // namespace detail

/// All real roots of `p` in [lo, hi], sorted, deduplicated. Degrees up to two
/// use the closed form (exact whenever the discriminant is a rational square);
/// irrational and higher-degree roots are bracketed to width 2^-64 (hi - lo).
/// The zero polynomial yields no roots.
inline std::vector<RootBracket> poly_roots(const PolyValue& p, const Rational& lo, const Rational& hi) {
  std::vector<RootBracket> roots;
  if (p.degree() <= 0 || hi < lo) return roots;
  Rational width = hi - lo;
  mpq_div_2exp(width.get_mpq_t(), width.get_mpq_t(), 64);
  auto inside = [&](const Rational& x) { return lo <= x && x <= hi; };

  if (p.degree() == 1) {
    Rational r = -p.coeff(0) / p.coeff(1);
    if (inside(r)) roots.push_back({r, r});
    return roots;
  }

  if (p.degree() == 2) {
    const Rational a = p.coeff(2);
    const Rational b = p.coeff(1);
    const Rational c = p.coeff(0);
    const Rational disc = b * b - 4 * a * c;
    if (disc < 0) return roots;
    Rational s;
    if (detail::rational_sqrt(disc, s)) {
      for (Rational r : {Rational((-b - s) / (2 * a)), Rational((-b + s) / (2 * a))}) {
        if (inside(r)) detail::add_root(roots, {r, r});
      }
    } else {
      // Irrational pair; the vertex separates them and each side is monotone.
      const Rational vertex = -b / (2 * a);
      if (lo < vertex && sgn(p(lo)) * sgn(p(vertex)) <= 0) {
        detail::add_root(roots, detail::bisect_root(p, lo, std::min(vertex, hi), width));
      }
      if (vertex < hi && sgn(p(vertex)) * sgn(p(hi)) <= 0) {
        detail::add_root(roots, detail::bisect_root(p, std::max(vertex, lo), hi, width));
      }
      if (vertex <= lo || vertex >= hi) {
        if (sgn(p(lo)) * sgn(p(hi)) <= 0 && roots.empty()) {
          detail::add_root(roots, detail::bisect_root(p, lo, hi, width));
        }
      }
    }
    std::sort(roots.begin(), roots.end(), [](const RootBracket& x, const RootBracket& y) { return x.lo < y.lo; });
    return roots;
  }

  // Higher degree: split at (approximate) critical points, bisect each
  // monotone piece that changes sign.
  std::vector<Rational> cuts{lo};
  for (const RootBracket& c : poly_roots(p.derivative(), lo, hi)) {
    Rational m = c.midpoint();
    if (lo < m && m < hi) cuts.push_back(std::move(m));
  }
  cuts.push_back(hi);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int a = sgn(p(cuts[i]));
    const int b = sgn(p(cuts[i + 1]));
    if (a == 0) detail::add_root(roots, {cuts[i], cuts[i]});
    if (b == 0) detail::add_root(roots, {cuts[i + 1], cuts[i + 1]});
    if (a * b < 0) detail::add_root(roots, detail::bisect_root(p, cuts[i], cuts[i + 1], width));
  }
  std::sort(roots.begin(), roots.end(), [](const RootBracket& x, const RootBracket& y) { return x.lo < y.lo; });
  return roots;
}

}  // namespace aemf
