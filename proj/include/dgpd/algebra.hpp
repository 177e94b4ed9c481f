#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dgpd/error.hpp"
#include "dgpd/groupoid.hpp"
#include "dgpd/rational.hpp"

namespace dgpd {

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<QComplex> {
  static constexpr bool exact = true;
  static bool negligible(const QComplex& z) { return z == QComplex{}; }
  static QComplex from_rational(const Rational& r) { return QComplex(r); }
  static std::complex<double> to_complex(const QComplex& z) { return {to_double(z.re), to_double(z.im)}; }
};

template <>
struct ScalarTraits<std::complex<double>> {
  static constexpr bool exact = false;
  static constexpr double prune = 1e-12;
  static constexpr double tolerance = 1e-9;
  static bool negligible(const std::complex<double>& z) { return std::abs(z) < prune; }
  static std::complex<double> from_rational(const Rational& r) { return {to_double(r), 0.0}; }
  static std::complex<double> to_complex(const std::complex<double>& z) { return z; }
};

/// Finite formal sum Σ c_a δ_a over the arrows of one structure.
///
/// The context is the arrow-name table of that structure. Two contexts match
/// when they are the same table or list the same ids. Zero coefficients are
/// never stored.
template <class S>
class AlgebraElement {
 public:
  using Scalar = S;
  using Terms = std::vector<std::pair<std::uint32_t, S>>;  // sorted by arrow index

  AlgebraElement() : context_(std::make_shared<NameTable>()) {}
  explicit AlgebraElement(std::shared_ptr<const NameTable> context) : context_(std::move(context)) {}

  static AlgebraElement delta(std::shared_ptr<const NameTable> context, Arrow a, S coeff = ScalarTraits<S>::from_rational(Rational(1))) {
    AlgebraElement e(std::move(context));
    e.add(a, coeff);
    e.prune();
    return e;
  }

  const std::shared_ptr<const NameTable>& context() const { return context_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  S operator[](Arrow a) const {
    auto it = lower(a.index);
    return it == terms_.end() || it->first != a.index ? S{} : it->second;
  }

  /// Accumulates without pruning; call prune() when done.
  void add(Arrow a, const S& coeff) {
    if (a.index >= context_->size())
      throw UnknownIdError("arrow index " + std::to_string(a.index) + " outside the element's arrow set");
    auto it = lower(a.index);
    if (it != terms_.end() && it->first == a.index)
      it->second += coeff;
    else
      terms_.insert(it, {a.index, coeff});
  }

  /// Replaces the terms with a dense coefficient vector (index = arrow), pruned.
  void assign_dense(const std::vector<S>& dense) {
    terms_.clear();
    for (std::uint32_t i = 0; i < dense.size(); ++i)
      if (!ScalarTraits<S>::negligible(dense[i])) terms_.emplace_back(i, dense[i]);
  }

  void prune() { std::erase_if(terms_, [](const auto& kv) { return ScalarTraits<S>::negligible(kv.second); }); }

  bool same_context(const AlgebraElement& o) const {
    return context_ == o.context_ || *context_ == *o.context_;
  }
  void require_context(const AlgebraElement& o) const {
    if (!same_context(o)) throw ContextMismatchError("algebra elements live over different arrow sets");
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    require_context(o);
    for (const auto& [k, c] : o.terms_) add(Arrow{k}, c);
    prune();
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator*(const S& s, AlgebraElement a) {
    for (auto& [k, c] : a.terms_) c = s * c;
    a.prune();
    return a;
  }
  friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
    return a + ScalarTraits<S>::from_rational(Rational(-1)) * b;
  }

  /// Exact mode compares pruned maps; float mode compares in sup norm
  /// against ScalarTraits::tolerance.
  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    if (!a.same_context(b)) return false;
    if constexpr (ScalarTraits<S>::exact) {
      return a.terms_ == b.terms_;
    } else {
      return sup_distance(a, b) <= ScalarTraits<S>::tolerance;
    }
  }

  /// max_a |u(a) − v(a)|.
  friend double sup_distance(const AlgebraElement& a, const AlgebraElement& b) {
    a.require_context(b);
    double d = 0.0;
    for (const auto& [k, c] : (a - b).terms_) d = std::max(d, std::abs(ScalarTraits<S>::to_complex(c)));
    return d;
  }

  /// Human-readable "c·δ_id + ..." (for witnesses); zero prints as "0".
  std::string to_string() const;

 private:
  typename Terms::iterator lower(std::uint32_t k) {
    return std::lower_bound(terms_.begin(), terms_.end(), k, [](const auto& t, std::uint32_t x) { return t.first < x; });
  }
  typename Terms::const_iterator lower(std::uint32_t k) const {
    return std::lower_bound(terms_.begin(), terms_.end(), k, [](const auto& t, std::uint32_t x) { return t.first < x; });
  }

  std::shared_ptr<const NameTable> context_;
  Terms terms_;
};

using ExactElement = AlgebraElement<QComplex>;
using FloatElement = AlgebraElement<std::complex<double>>;

std::string format_scalar(const QComplex& z);
std::string format_scalar(const std::complex<double>& z);

template <class S>
std::string AlgebraElement<S>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [k, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += format_scalar(c) + "·δ" + (*context_)[k];
  }
  return out;
}

/// Exact element converted to double precision.
FloatElement to_float(const ExactElement& e);

}  // namespace dgpd
