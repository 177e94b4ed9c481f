#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dgpd/compact.hpp"
#include "dgpd/report.hpp"
#include "json.hpp"

namespace dgpd::sg {

using cg::cd;
using cg::GroupFunction;
using cg::GroupModel;

/// An element of K: an index into the finite group K, or an integer.
using KElement = std::int64_t;

/// K → G with K acting on G by left multiplication through the embedding.
/// Either a finite group K mapped into a finite G, or ℤ ∩ [−B, B] mapped into
/// the circle by n ↦ rn. Non-central embeddings are constructible on purpose;
/// validate() reports them.
class CentralEmbedding {
 public:
  /// K = the listed elements of G with the inclusion. Throws PreconditionError
  /// unless they form a subgroup.
  static CentralEmbedding subgroup(const cg::FiniteGroup& g, const std::vector<std::string>& elements);
  /// K = Z(G).
  static CentralEmbedding center(const cg::FiniteGroup& g);
  /// K = {e}.
  static CentralEmbedding trivial(const cg::FiniteGroup& g);
  /// ℤ truncated to [−bound, bound], acting on the circle through rotation by r.
  static CentralEmbedding integers(double r, std::int64_t bound);

  bool is_integers() const { return integers_; }
  const GroupModel& model() const { return model_; }
  double r() const { return r_; }
  std::int64_t bound() const { return bound_; }
  /// Finite K only.
  const cg::FiniteGroup& k_group() const;
  /// Index in G of the image of κ (finite only).
  std::size_t embed(KElement k) const;

  std::vector<KElement> elements() const;
  KElement identity() const { return integers_ ? 0 : static_cast<KElement>(k_.identity()); }
  bool contains(KElement k) const;
  /// κλ; TruncationError when the sum leaves the integer band.
  KElement compose(KElement k, KElement l) const;
  /// Throws UnknownIdError.
  std::string element_name(KElement k) const;
  KElement element(std::string_view name) const;

  /// Axioms: homomorphism (finite), central-image.
  ValidationReport validate() const;

 private:
  bool integers_ = false;
  GroupModel model_;
  cg::FiniteGroup k_;
  std::vector<std::size_t> embed_;
  double r_ = 0.0;
  std::int64_t bound_ = 0;
};

/// Σ_κ (u_κ)^κ: finitely many K-levels, each a function on G.
class LevelFunction {
 public:
  LevelFunction() = default;
  explicit LevelFunction(GroupModel m) : model_(std::move(m)) {}
  /// u^κ = δ_κ ⊗ u.
  static LevelFunction level(KElement k, const GroupFunction& u);

  const GroupModel& model() const { return model_; }
  const std::map<KElement, GroupFunction>& levels() const { return levels_; }
  bool is_zero(double tol = 0.0) const;

  /// Adds u at level κ; zero levels are dropped.
  void add(KElement k, const GroupFunction& u);
  LevelFunction& operator+=(const LevelFunction& o);
  friend LevelFunction operator+(LevelFunction a, const LevelFunction& b) { return a += b; }

 private:
  GroupModel model_;
  std::map<KElement, GroupFunction> levels_;
};

/// max over the union of levels (missing levels count as 0).
double sup_distance(const LevelFunction& a, const LevelFunction& b);

/// (L_κ u)(g) = u(κg). On the circle, e_k ↦ e^{ikrκ} e_k.
GroupFunction translate(const CentralEmbedding& ce, KElement k, const GroupFunction& u);

/// u^κ *• v^λ = (u*v)^{κλ}, bilinearly.
LevelFunction conv_bullet(const CentralEmbedding& ce, const LevelFunction& x, const LevelFunction& y);
/// u^κ *∘ v^λ = (L_λ u · v)^{κλ}, bilinearly.
LevelFunction conv_circ(const CentralEmbedding& ce, const LevelFunction& x, const LevelFunction& y);

enum class Mode { circ, bullet };

/// Direct convolution on K×G from the structure maps s(κ,g) = g, t(κ,g) = κg
/// (∘, counting measure on K) and the product group K×G (•, counting on K
/// times normalised Haar on G). Finite K: the groupoids are built and
/// convolved as tables. Integer K: each output level of the band is summed
/// from the definition; TruncationError if a product escapes the band.
LevelFunction generic_conv(const CentralEmbedding& ce, const LevelFunction& x, const LevelFunction& y, Mode mode);

struct MainTheoremResult {
  LevelFunction lhs;           // Σ_j (u^κ1 *∘ π_ij^λ1) *• (v^κ2 *∘ π_jk^λ2)
  LevelFunction rhs;           // Σ_j (u^κ1 *• v^κ2) *∘ (π_ij^λ1 *• π_jk^λ2)
  LevelFunction intermediate;  // ((L_λ1 u * L_λ2 v)·π_ik)^{κ1λ1κ2λ2}, audit only
  double gap = 0.0;
  bool equal = false;
};

/// Both sides through conv_circ / conv_bullet only. Throws PreconditionError
/// if π is invalid or an index is out of range.
MainTheoremResult main_theorem_check(const CentralEmbedding& ce, const cg::UnitaryRep& pi, const GroupFunction& u,
                                     const GroupFunction& v, KElement k1, KElement k2, KElement l1, KElement l2,
                                     std::size_t i, std::size_t k, double tol = 1e-9);

struct TheoremSweep {
  std::vector<const cg::UnitaryRep*> reps;
  std::vector<std::pair<GroupFunction, GroupFunction>> inputs;
  std::vector<KElement> levels;  // κ1, κ2, λ1, λ2 each range over this list
};

/// Axiom "main-theorem" over every rep, input pair, level 4-tuple and (i,k).
/// Witness ids: rep, input index, κ1, κ2, λ1, λ2, i, k.
ValidationReport main_theorem_sweep(const CentralEmbedding& ce, const TheoremSweep& sweep, double tol = 1e-9);

/// u_{jk} ↦ (e_k)^j against the noncommutative torus closed forms for all
/// basis pairs with indices in [−range, range]. `flip_sign` runs the
/// singular side with rotation −r (negative control).
/// Axioms: circ-intertwined, bullet-intertwined.
ValidationReport torus_bridge_check(double r, std::int64_t range, bool flip_sign = false, double tol = 1e-12);

nlohmann::json to_json(const CentralEmbedding& ce, const LevelFunction& x);

}  // namespace dgpd::sg
