#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "dgpd/groupoid.hpp"
#include "dgpd/report.hpp"

namespace dgpd {

/// Bottom-right corner (k, h) with t(k) = t(h) in M.
struct Corner {
  Arrow k;  // arrow of the K-side groupoid
  Arrow h;  // arrow of the H-side groupoid
  auto operator<=>(const Corner&) const = default;
};

/// (a, b, c, d) with a∘b, c∘d, a•c and b•d all defined.
struct ComposableSquare {
  Arrow a, b, c, d;
  auto operator<=>(const ComposableSquare&) const = default;
};

/// One set of squares carrying two groupoid structures.
///
///   squares ⇉ K   vertical product ∘   (objects = arrows of side_k)
///   squares ⇉ H   horizontal product • (objects = arrows of side_h)
///   K ⇉ M         side_k, composed with •
///   H ⇉ M         side_h, composed with ∘
///
/// Because every table indexes its ids in sorted order, the vertical object
/// with index i *is* the K-arrow with index i (likewise for H and M), which
/// make() verifies.
class DoubleGroupoid {
 public:
  DoubleGroupoid() = default;

  /// Throws StructureError when the id sets do not line up.
  static DoubleGroupoid make(Groupoid vertical, Groupoid horizontal, Groupoid side_k, Groupoid side_h);

  const Groupoid& vertical() const { return vertical_; }
  const Groupoid& horizontal() const { return horizontal_; }
  const Groupoid& side_k() const { return side_k_; }
  const Groupoid& side_h() const { return side_h_; }

  std::size_t square_count() const { return vertical_.arrow_count(); }
  Arrow square(std::string_view id) const { return vertical_.arrow(id); }
  const std::string& name(Arrow a) const { return vertical_.name(a); }

  // Structure maps of the squares, landing in the side groupoids.
  Arrow v_source(Arrow a) const { return Arrow{vertical_.source(a).index}; }
  Arrow v_target(Arrow a) const { return Arrow{vertical_.target(a).index}; }
  Arrow h_source(Arrow a) const { return Arrow{horizontal_.source(a).index}; }
  Arrow h_target(Arrow a) const { return Arrow{horizontal_.target(a).index}; }

  /// t^D(a) = (t^V(a), t^H(a)).
  Corner double_target(Arrow a) const { return {v_target(a), h_target(a)}; }

  /// Every corner, in (k, h) index order.
  std::vector<Corner> corners() const;
  bool is_corner(Corner c) const {
    return side_k_.target(c.k).index == side_h_.target(c.h).index;
  }

  /// a∘(k,h) = (t^V(a), t^H(a)∘h), defined when s^V(a) = k.
  Corner act_vertical(Arrow a, Corner c) const;
  /// a•(k,h) = (t^V(a)•k, t^H(a)), defined when s^H(a) = h.
  Corner act_horizontal(Arrow a, Corner c) const;

  /// The bottom-left groupoid H ⇉ M is a single point.
  bool is_strict_2group() const { return side_h_.arrow_count() == 1 && side_h_.object_count() == 1; }

  std::string corner_name(Corner c) const { return pair_label(side_k_.name(c.k), side_h_.name(c.h)); }

 private:
  Groupoid vertical_;
  Groupoid horizontal_;
  Groupoid side_k_;
  Groupoid side_h_;
};

/// Per-axiom report: component validity (short-circuits), the four
/// functoriality conditions, interchange over all composable squares, and
/// surjectivity of the double target onto the corner set.
ValidationReport validate_double(const DoubleGroupoid& dg, bool audit = false);

/// Exact enumeration of composable squares in lexicographic (a,b,c,d) order.
/// The default walks composability indexes; `audit` scans all |squares|⁴ tuples.
std::vector<ComposableSquare> composable_squares(const DoubleGroupoid& dg, bool audit = false);

/// t^D(a∘b) = a∘t^D(b) and t^D(a•b) = a•t^D(b) over all composable pairs.
ValidationReport check_double_target_equivariance(const DoubleGroupoid& dg);

// --- constructions -------------------------------------------------------------

/// G as a double groupoid: squares = G, ∘ trivial (g∘g = g), • the group law,
/// K = G, H = M = point. Throws PreconditionError on multi-object input.
DoubleGroupoid from_group(const Groupoid& group);

/// K×G with vertical action groupoid t(κ,g) = φ(κ)g and horizontal product
/// group. `phi[i]` is the index in `group` of the image of acting[i].
/// K = G as a group, H = M = point. Validity requires φ to land in the centre.
DoubleGroupoid action_double(const Groupoid& acting, const Groupoid& group, const std::vector<std::size_t>& phi);

/// action_double for a subset `subgroup` of `group` acting by left
/// multiplication. Squares are labelled "(κ,g)". Non-central subgroups are
/// accepted; validate_double reports the failure. Throws PreconditionError
/// if the subset is not closed under the group law.
DoubleGroupoid central_action_double(const Groupoid& group, const std::vector<std::string>& subgroup);

/// An abelian group with ∘ = • = the group law over point sides.
DoubleGroupoid diagonal_double(const Groupoid& abelian_group);

/// Coarse double groupoid on a point set: squares are all corner labellings
/// "[p,q;r,s]" (top-left, top-right, bottom-left, bottom-right), both sides
/// are the pair groupoid. a∘b stacks b on top of a, a•b puts b left of a.
DoubleGroupoid coarse_double(const std::vector<std::string>& points);

/// The double groupoid with no squares and no objects.
DoubleGroupoid empty_double();

/// Copy of a one-object groupoid whose object is renamed.
Groupoid with_object_name(const Groupoid& group, const std::string& object);

}  // namespace dgpd
