#pragma once

#include <cstddef>
#include <vector>

#include "dgpd/algebra.hpp"
#include "dgpd/double_groupoid.hpp"
#include "dgpd/haar.hpp"

namespace dgpd {

/// (u*v)(g) = Σ_{h∈t⁻¹(t(g))} u(h)·v(h⁻¹∘g)·weight(h), evaluated over the
/// supports: every pair (x, y) with s(x) = t(y) contributes
/// u(x)·v(y)·weight(x) to the coefficient of x∘y.
template <class S>
AlgebraElement<S> convolve(const Category& cat, const HaarSystem& h, const AlgebraElement<S>& u,
                           const AlgebraElement<S>& v) {
  const auto& ctx = cat.shared_arrow_names();
  for (const auto* e : {&u, &v})
    if (e->context() != ctx && *e->context() != *ctx)
      throw ContextMismatchError("algebra element does not live over this groupoid's arrows");
  AlgebraElement<S> out(ctx);
  if (u.is_zero() || v.is_zero()) return out;
  if (u.size() == 1 && v.size() == 1) {
    const auto& [x, cu] = u.terms().front();
    const auto& [y, cv] = v.terms().front();
    if (auto xy = cat.try_compose(Arrow{x}, Arrow{y})) out.add(*xy, cu * ScalarTraits<S>::from_rational(h.weights.at(x)) * cv);
    out.prune();
    return out;
  }
  std::vector<S> dense(cat.arrow_count());
  for (const auto& [x, cu] : u.terms()) {
    const S wx = cu * ScalarTraits<S>::from_rational(h.weights.at(x));
    for (const auto& [y, cv] : v.terms()) {
      if (auto xy = cat.try_compose(Arrow{x}, Arrow{y})) dense[xy->index] += wx * cv;
    }
  }
  out.assign_dense(dense);
  return out;
}

/// Largest n accepted by pair_matrix_iso_check.
inline constexpr std::size_t kPairMatrixMaxN = 12;

/// Checks on every basis pair that δ_(i,j) ↦ E_ij (or E_ji when `transposed`)
/// turns counting-measure convolution on the pair groupoid of {1..n} into
/// matrix multiplication. Throws PreconditionError for n = 0 or n > bound.
bool pair_matrix_iso_check(std::size_t n, bool transposed = false);

/// The convolution products *∘ (vertical, induced μ°) and *• (horizontal,
/// induced μ•) of a double groupoid.
class DoubleConvolutions {
 public:
  /// Throws PreconditionError unless `dh` is a double Haar system on `dg`.
  DoubleConvolutions(DoubleGroupoid dg, const DoubleHaarSystem& dh);

  template <class S>
  AlgebraElement<S> circ(const AlgebraElement<S>& u, const AlgebraElement<S>& v) const {
    return convolve(dg_.vertical(), induced_.circ, u, v);
  }
  template <class S>
  AlgebraElement<S> bullet(const AlgebraElement<S>& u, const AlgebraElement<S>& v) const {
    return convolve(dg_.horizontal(), induced_.bullet, u, v);
  }

  const DoubleGroupoid& double_groupoid() const { return dg_; }
  const InducedHaar& induced() const { return induced_; }
  const std::shared_ptr<const NameTable>& context() const { return dg_.vertical().shared_arrow_names(); }
  ExactElement delta(Arrow a) const { return ExactElement::delta(context(), a); }

 private:
  DoubleGroupoid dg_;
  InducedHaar induced_;
};

DoubleConvolutions double_convolutions(const DoubleGroupoid& dg, const DoubleHaarSystem& dh);

struct CompatViolation {
  Arrow a, b, c, d;
  ExactElement lhs;  // (δa *∘ δb) *• (δc *∘ δd)
  ExactElement rhs;  // (δa *• δc) *∘ (δb *• δd)
};

struct CompatReport {
  std::size_t checked = 0;
  std::size_t violation_count = 0;
  std::vector<CompatViolation> violations;  // first kViolationCap, in tuple order
  bool verdict_products_equal = false;      // violation_count == 0
  bool structural_products_equal = false;   // ∘ and • tables coincide
  bool counting_measures = false;           // both induced systems are counting
  bool audit = false;

  static constexpr std::size_t kViolationCap = 256;
};

/// Whether ∘ and • are the same partial map on squares × squares.
bool products_equal(const DoubleGroupoid& dg);

/// Compares the two sides of the interchange law on basis deltas. Only tuples
/// with (a,b),(c,d) vertically composable or (a,c),(b,d) horizontally
/// composable are visited (both sides vanish elsewhere); `audit` visits all
/// |squares|⁴ tuples. Work is split over `jobs` threads and merged in tuple
/// order.
///
/// For counting induced measures the verdict must agree with
/// products_equal(); a disagreement throws InternalInconsistencyError.
CompatReport compatibility_scan(const DoubleGroupoid& dg, const DoubleHaarSystem& dh, bool audit = false,
                                unsigned jobs = 1);

}  // namespace dgpd
