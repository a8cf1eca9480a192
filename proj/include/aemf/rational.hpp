#pragma once

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aemf {

// Exact arithmetic everywhere. gmpxx uses expression templates, so never bind
// an arithmetic expression to `auto`; name the type.
using Rational = mpq_class;
using Integer = mpz_class;

inline int sign(const Rational& x) { return sgn(x); }

inline Integer floor_of(const Rational& x) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& x) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return r;
}

inline bool is_integral(const Rational& x) { return x.get_den() == 1; }

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Canonical text form: `p` for integers, `p/q` otherwise (lowest terms).
/// num / den in lowest terms; Rational(num, den) alone does not reduce.
inline Rational ratio(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& x) { return x.get_str(); }

/// Parses `[-]digits` or `[-]digits/digits`. Decimals are rejected so that
/// values stay exact through files.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s) {
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    }
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  Integer n(std::string(num), 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  if (!text.empty() && text.front() == '-') n = -n;
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace aemf
