#include "dgpd/algebra.hpp"

#include <cstdio>

namespace dgpd {

std::string format_scalar(const QComplex& z) {
  if (z.im == Rational(0)) return format_rational(z.re);
  if (z.re == Rational(0)) return format_rational(z.im) + "i";
  return "(" + format_rational(z.re) + (z.im < 0 ? "" : "+") + format_rational(z.im) + "i)";
}

std::string format_scalar(const std::complex<double>& z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.12g%+.12gi)", z.real(), z.imag());
  return buf;
}

FloatElement to_float(const ExactElement& e) {
  FloatElement out(e.context());
  for (const auto& [k, c] : e.terms()) out.add(Arrow{k}, ScalarTraits<QComplex>::to_complex(c));
  out.prune();
  return out;
}

}  // namespace dgpd
