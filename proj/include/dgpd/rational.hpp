#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace dgpd {

// Compare against Rational(k), never a bare integer: boost 1.74's mixed
// ==/!= recurse forever under C++20 rewritten comparison operators.
using Rational = boost::rational<std::int64_t>;

/// Parses "p", "-p" or "p/q". Throws dgpd::Error on malformed input or q == 0.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& r);

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Complex number with exact rational parts.
struct QComplex {
  Rational re{0};
  Rational im{0};

  QComplex() = default;
  QComplex(Rational r) : re(r) {}  // NOLINT(google-explicit-constructor)
  QComplex(Rational r, Rational i) : re(r), im(i) {}

  friend QComplex operator+(const QComplex& a, const QComplex& b) { return {a.re + b.re, a.im + b.im}; }
  friend QComplex operator-(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  QComplex& operator+=(const QComplex& o) { return *this = *this + o; }
  friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
};

}  // namespace dgpd
