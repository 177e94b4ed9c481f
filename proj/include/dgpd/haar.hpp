#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgpd/double_groupoid.hpp"
#include "dgpd/groupoid.hpp"
#include "dgpd/rational.hpp"
#include "dgpd/report.hpp"

namespace dgpd {

/// Atomic Haar weights: weights[a] is the measure of {a} inside t⁻¹(t(a)).
struct HaarSystem {
  std::vector<Rational> weights;

  const Rational& weight(Arrow a) const { return weights.at(a.index); }
  friend bool operator==(const HaarSystem&, const HaarSystem&) = default;

  /// Throws PreconditionError naming the first arrow without a weight and
  /// UnknownIdError for weights on ids that are not arrows.
  static HaarSystem from_map(const Category& cat, const std::map<std::string, Rational>& weights);
  std::map<std::string, Rational> to_map(const Category& cat) const;
};

HaarSystem counting_haar(const Category& cat);
HaarSystem uniform_haar(const Category& cat, const Rational& c);
bool is_counting(const HaarSystem& h);

/// Positivity and left invariance: weight(g∘h) = weight(h) for every
/// composable (g, h).
ValidationReport validate_haar(const Groupoid& gpd, const HaarSystem& h);

/// μ^D on the double-target fibres plus Haar systems on both side groupoids.
struct DoubleHaarSystem {
  std::vector<Rational> mu_d;  // indexed by square
  HaarSystem mu_k;
  HaarSystem mu_h;

  static DoubleHaarSystem counting(const DoubleGroupoid& dg);
};

/// Component validity plus double invariance of μ^D under L^V_a and L^H_a.
ValidationReport validate_double_haar(const DoubleGroupoid& dg, const DoubleHaarSystem& dh);

/// Fibre integrals as weighted finite sums. Functions are dense vectors over
/// the relevant index set; corner functions are indexed k·|H| + h.
namespace fiber {

using Function = std::vector<Rational>;

inline std::size_t corner_index(const DoubleGroupoid& dg, Corner c) {
  return static_cast<std::size_t>(c.k.index) * dg.side_h().arrow_count() + c.h.index;
}

/// ∫dμ over the target fibres of `gpd`: arrows → objects.
Function integrate(const Groupoid& gpd, const HaarSystem& h, const Function& u);
/// ∫dμ^D: squares → corners.
Function integrate_double_target(const DoubleGroupoid& dg, const DoubleHaarSystem& dh, const Function& u);
/// ∫dμ̄^H: corners → K.
Function integrate_bar_h(const DoubleGroupoid& dg, const DoubleHaarSystem& dh, const Function& u);
/// ∫dμ̄^K: corners → H.
Function integrate_bar_k(const DoubleGroupoid& dg, const DoubleHaarSystem& dh, const Function& u);

}  // namespace fiber

/// Haar systems induced on the vertical and horizontal structures together
/// with the commutation checks of the integration diagram.
struct InducedHaar {
  HaarSystem circ;    // on squares ⇉ K
  HaarSystem bullet;  // on squares ⇉ H
  ValidationReport circ_report;
  ValidationReport bullet_report;
  /// Axioms: circ-triangle, bullet-triangle, fubini-square, outer-square.
  ValidationReport diagram;

  bool ok() const { return circ_report.ok() && bullet_report.ok() && diagram.ok(); }
};

/// μ°(b) = μ^D(b)·μ^H(t^H(b)) and μ•(b) = μ^D(b)·μ^K(t^V(b)); every path of
/// the integration diagram is compared exactly on the full delta basis.
/// Throws PreconditionError when `dh` is not a double Haar system.
InducedHaar induce_haar(const DoubleGroupoid& dg, const DoubleHaarSystem& dh);

}  // namespace dgpd
