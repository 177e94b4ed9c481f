#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace dgpd::nct {

using cd = std::complex<double>;

/// Finite combination Σ c_{jk} u_{jk} on ℤ⋉S¹, where u_{jk}(n,θ) = e^{ikθ}
/// if n = j and 0 otherwise. Keys are (level j, frequency k).
class TorusFunction {
 public:
  using Key = std::pair<std::int64_t, std::int64_t>;
  static constexpr double kPrune = 1e-12;

  TorusFunction() = default;
  static TorusFunction basis(std::int64_t j, std::int64_t k, cd c = 1.0);

  const std::map<Key, cd>& coeffs() const { return coeffs_; }
  cd at(std::int64_t j, std::int64_t k) const;
  bool is_zero() const { return coeffs_.empty(); }

  /// Accumulates without pruning.
  void add(std::int64_t j, std::int64_t k, cd c) { coeffs_[{j, k}] += c; }
  void prune();

  /// Point evaluation u(n, θ).
  cd evaluate(std::int64_t n, double theta) const;

  TorusFunction& operator+=(const TorusFunction& o);
  friend TorusFunction operator+(TorusFunction a, const TorusFunction& b) { return a += b; }
  friend TorusFunction operator-(TorusFunction a, const TorusFunction& b) { return a += cd(-1) * b; }
  friend TorusFunction operator*(cd s, TorusFunction a);

  std::string to_string() const;

 private:
  std::map<Key, cd> coeffs_;
};

/// max |u_{jk} − v_{jk}| over the union of supports.
double sup_distance(const TorusFunction& a, const TorusFunction& b);
inline bool approx_equal(const TorusFunction& a, const TorusFunction& b, double tol = 1e-9) {
  return sup_distance(a, b) <= tol;
}

/// u_{ab} *∘ u_{cd} = e^{irbc} u_{(a+c)(b+d)}, extended bilinearly.
TorusFunction conv_circ(const TorusFunction& u, const TorusFunction& v, double r);
/// u_{ab} *• u_{cd} = u_{(a+c)b} if b = d, else 0, extended bilinearly.
TorusFunction conv_bullet(const TorusFunction& u, const TorusFunction& v);

/// "e^{i·6r}·u_{4,6}" style description of u_{ab} *∘ u_{cd}.
std::string circ_symbolic(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

enum class Mode { circ, bullet };

/// Evaluates the defining sums level by level on Fourier slices:
///   circ:   (u*v)(n,θ) = Σ_m u(m, r(n−m)+θ) v(n−m, θ)
///   bullet: (u*v)(n,θ) = Σ_m ∫ u(m,φ) v(n−m, θ−φ) dφ   (normalised dφ)
/// The rotation is applied as the phase e^{ikr(n−m)} on frequency k and the
/// circle integral by exact orthogonality of characters.
TorusFunction generic_conv(const TorusFunction& u, const TorusFunction& v, double r, Mode mode);

struct CompatExpressions {
  TorusFunction expr1;  // (u_ab *∘ u_cd) *• (u_ef *∘ u_gh)
  TorusFunction expr2;  // (u_ab *• u_ef) *∘ (u_cd *• u_gh)
  bool equal = false;
};

/// idx = (a,b,c,d,e,f,g,h).
CompatExpressions compat_expressions(const std::array<std::int64_t, 8>& idx, double r, double tol = 1e-9);

struct ClosedVsOracle {
  std::size_t pairs = 0;
  double max_error_circ = 0.0;
  double max_error_bullet = 0.0;
  std::vector<std::array<std::int64_t, 4>> failures;  // (a,b,c,d), capped
  bool passed(double tol) const { return max_error_circ <= tol && max_error_bullet <= tol; }
};

/// Closed forms against generic_conv for every basis pair with all four
/// indices in [−range, range].
ClosedVsOracle closed_vs_oracle(std::int64_t range, double r, double tol);

struct CompatTable {
  std::int64_t level_range = 0;
  std::int64_t freq_range = 0;
  std::size_t same_freq_total = 0, same_freq_equal = 0;     // b=f and d=h
  std::size_t sum_differs_total = 0, sum_differs_zero = 0;  // b+d ≠ f+h: both sides 0
  std::size_t other_total = 0, other_unequal = 0;           // remaining tuples
  std::vector<std::array<std::int64_t, 8>> unequal_examples;  // first few, scan order
  bool derived_witness_unequal = false;                     // (0,1,0,0,0,0,0,1)

  bool reproduces_claims() const {
    return same_freq_equal == same_freq_total && sum_differs_zero == sum_differs_total && derived_witness_unequal;
  }
};

/// Scans every (a..h) with levels a,c,e,g in [−level_range, level_range] and
/// frequencies b,d,f,h in [−freq_range, freq_range].
CompatTable compat_table(std::int64_t level_range, std::int64_t freq_range, double r, double tol);

/// {"j,k": [re, im]}
nlohmann::json to_json(const TorusFunction& u);
TorusFunction torus_from_json(const nlohmann::json& j);

}  // namespace dgpd::nct
