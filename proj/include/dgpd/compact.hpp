#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dgpd/groupoid.hpp"
#include "dgpd/report.hpp"
#include "json.hpp"

namespace dgpd::cg {

using cd = std::complex<double>;

/// A finite group as a one-object groupoid plus cached multiplication,
/// inverse, element orders and centre. Copies share the tables.
class FiniteGroup {
 public:
  FiniteGroup() = default;
  /// Throws PreconditionError unless `table` has exactly one object.
  FiniteGroup(const Groupoid& table, std::string name);

  const std::string& name() const { return impl_->name; }
  std::size_t order() const { return impl_ ? impl_->inv.size() : 0; }
  const Groupoid& table() const { return impl_->table; }

  std::size_t mul(std::size_t a, std::size_t b) const { return impl_->mul[a * order() + b]; }
  std::size_t inv(std::size_t a) const { return impl_->inv[a]; }
  std::size_t identity() const { return impl_->identity; }
  std::size_t element_order(std::size_t a) const { return impl_->element_order[a]; }
  const std::vector<std::size_t>& center() const { return impl_->center; }
  bool is_central(std::size_t a) const;

  const std::string& element_name(std::size_t a) const { return impl_->table.name(Arrow{static_cast<std::uint32_t>(a)}); }
  /// Throws UnknownIdError.
  std::size_t index(std::string_view name) const;

  /// Same tables (shared, or equal element names and multiplication).
  bool same(const FiniteGroup& o) const;

 private:
  struct Impl {
    std::string name;
    Groupoid table;
    std::vector<std::size_t> mul, inv, element_order, center;
    std::size_t identity = 0;
  };
  std::shared_ptr<const Impl> impl_;
};

/// Where group functions live: a finite group (value tables) or the circle
/// (finitely supported Fourier series in e_k(θ) = e^{ikθ}).
class GroupModel {
 public:
  static GroupModel circle() { return GroupModel(); }
  static GroupModel finite(FiniteGroup g);

  bool is_circle() const { return !group_; }
  /// Throws PreconditionError for the circle.
  const FiniteGroup& group() const;
  std::string name() const { return group_ ? group_->name() : "circle"; }
  bool same(const GroupModel& o) const;

 private:
  std::shared_ptr<const FiniteGroup> group_;
};

/// Function on a compact group. Finite model: total table over the elements.
/// Circle model: sparse Fourier coefficients, pruned below 1e-12.
class GroupFunction {
 public:
  static constexpr double kPrune = 1e-12;

  GroupFunction() = default;
  static GroupFunction table(const FiniteGroup& g, std::vector<cd> values);
  static GroupFunction fourier(std::map<std::int64_t, cd> coeffs);
  static GroupFunction constant(const GroupModel& m, cd c);
  static GroupFunction zero(const GroupModel& m) { return constant(m, 0.0); }
  /// e_k on the circle.
  static GroupFunction character(std::int64_t k, cd c = 1.0);

  const GroupModel& model() const { return model_; }
  const std::vector<cd>& values() const { return values_; }
  const std::map<std::int64_t, cd>& coeffs() const { return coeffs_; }

  /// Finite model only.
  cd at(std::size_t g) const { return values_.at(g); }
  /// Circle model only; 0 off the support.
  cd coeff(std::int64_t k) const;
  /// Circle model only: Σ c_k e^{ikθ}.
  cd evaluate(double theta) const;

  bool is_zero(double tol = 0.0) const;

  GroupFunction& operator+=(const GroupFunction& o);
  friend GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
  friend GroupFunction operator-(GroupFunction a, const GroupFunction& b) { return a += cd(-1) * b; }
  friend GroupFunction operator*(cd s, GroupFunction a);

  std::string to_string() const;

 private:
  void prune();
  GroupModel model_;
  std::vector<cd> values_;
  std::map<std::int64_t, cd> coeffs_;
};

/// Finite model: max over elements. Circle model: max over Fourier
/// coefficients. Throws ContextMismatchError across models.
double sup_distance(const GroupFunction& a, const GroupFunction& b);

/// (u*v)(g) = ∫ u(h)v(h⁻¹g) dμ(h) with normalised Haar measure:
/// (1/|G|)Σ_h on a finite group, e_k*e_l = δ_kl e_k on the circle.
GroupFunction convolve(const GroupFunction& u, const GroupFunction& v);
/// Pointwise product; a Cauchy product of coefficients on the circle.
GroupFunction pointwise(const GroupFunction& u, const GroupFunction& v);

/// Random function from a seeded generator. Finite: every value in the unit
/// square of ℂ. Circle: coefficients on frequencies [−max_freq, max_freq].
GroupFunction random_function(const GroupModel& m, std::mt19937_64& rng, std::int64_t max_freq = 3);

/// Finite-dimensional representation in a fixed ordered basis e_0..e_{d−1}.
/// Finite model: one matrix per element. Circle model: the diagonal
/// representation θ ↦ diag(e^{i n_0 θ}, ...) given by `charges`.
struct UnitaryRep {
  std::string name;
  GroupModel model;
  std::size_t dim = 0;
  std::vector<Eigen::MatrixXcd> matrices;
  std::vector<std::int64_t> charges;
  bool declared_irreducible = false;

  static UnitaryRep circle_characters(std::string name, std::vector<std::int64_t> charges);

  /// π_ij(g) = ⟨e_i, π(g)e_j⟩, indices 0-based. Throws PreconditionError
  /// when out of range.
  GroupFunction coefficient(std::size_t i, std::size_t j) const;
  /// Values of the character.
  GroupFunction character() const;
};

/// Homomorphism, identity and unitarity to `tol`. Throws StructureError on
/// a matrix count or shape mismatch.
ValidationReport validate_rep(const UnitaryRep& pi, double tol = 1e-12);

/// ⟨χ,χ⟩ in the normalised ℓ² product (1 exactly for irreducibles).
double character_norm(const UnitaryRep& pi);
bool is_irreducible(const UnitaryRep& pi, double tol = 1e-9);
/// Whether σ and π have equal characters (hence are equivalent).
bool equivalent(const UnitaryRep& sigma, const UnitaryRep& pi, double tol = 1e-9);

/// σ⊗π with basis e_a⊗e_i at index a·d_π + i.
UnitaryRep tensor_rep(const UnitaryRep& sigma, const UnitaryRep& pi);

struct IdentityCheck {
  GroupFunction lhs;
  GroupFunction rhs;
  double gap = 0.0;
  bool equal = false;
};

/// Σ_j (u·π_ij)*(v·π_jk)  vs  (u*v)·π_ik.
IdentityCheck coeff_conv_identity_check(const UnitaryRep& pi, const GroupFunction& u, const GroupFunction& v,
                                        std::size_t i, std::size_t k, double tol = 1e-9);
/// Σ_j (u·π_ij)*(v·π_jk)  vs  Σ_j (u*v)·(π_ij*π_jk).
IdentityCheck weak_compat_check(const UnitaryRep& pi, const GroupFunction& u, const GroupFunction& v, std::size_t i,
                                std::size_t k, double tol = 1e-9);

/// Axiom "schur": π_ij*π_jk = (1/d)π_ik for all i,j,k. Axiom
/// "cross-orthogonality": σ_ab*π_cd = 0 for every σ in `others` that is
/// not equivalent to π (both orders).
ValidationReport schur_check(const UnitaryRep& pi, const std::vector<UnitaryRep>& others = {}, double tol = 1e-12);

struct NaiveWitness {
  std::size_t a, b, c, i, j, k;
  GroupFunction lhs;  // (σ_ab·π_ij)*(π_jk·σ_bc)
  GroupFunction rhs;  // (σ_ab*σ_bc)·(π_ij*π_jk)
  double gap;
};

/// Every (a,b,c,i,j,k) where the naive law fails by more than `gap`, in
/// lexicographic order. Throws PreconditionError if either rep is invalid.
std::vector<NaiveWitness> naive_compat_search(const UnitaryRep& sigma, const UnitaryRep& pi, double gap = 1e-6,
                                              unsigned jobs = 1);

// --- fixtures -----------------------------------------------------------------

struct GroupFixture {
  FiniteGroup group;
  std::vector<UnitaryRep> irreps;  // complete list

  /// Throws UnknownIdError.
  const UnitaryRep& rep(std::string_view name) const;
};

/// Z/n, elements "0".."n−1", characters chi0..chi{n−1}: χ_a(g) = e^{2πiag/n}.
GroupFixture cyclic_fixture(std::size_t n);
/// S3 on {0,1,2}, elements "p<images>", irreps triv, sign, rho2. rho2 is the
/// sum-zero part of the permutation representation in the orthonormal basis
/// (1,−1,0)/√2, (1,1,−2)/√6.
GroupFixture s3_fixture();
/// Q8, elements 1,−1,i,−i,j,−j,k,−k, irreps triv, chi_i, chi_j, chi_k, rho2
/// with i ↦ diag(i,−i), j ↦ [[0,1],[−1,0]].
GroupFixture q8_fixture();
/// S3×S3 with elements "(g,h)" and the four irreps rho2_left, rho2_right,
/// sign_left, sign_right pulled back along the projections (not a complete
/// list). rho2_left⊗rho2_right is irreducible of dimension 4.
GroupFixture s3xs3_fixture();

/// "z<n>" (n ≥ 1), "s3", "q8", "s3xs3". Throws UnknownIdError.
GroupFixture fixture_by_name(std::string_view name);

/// {"name", "group": category table, "irreps": [{"name","dim","irreducible",
/// "matrices": {element: [[[re,im],...],...]}}]}
nlohmann::json to_json(const GroupFixture& f);
GroupFixture fixture_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GroupFunction& u);

}  // namespace dgpd::cg
