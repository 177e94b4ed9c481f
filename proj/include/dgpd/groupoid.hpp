#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dgpd/report.hpp"

namespace dgpd {

/// Dense index of an object inside one structure. Indices follow the
/// lexicographic order of the object ids.
struct Obj {
  std::uint32_t index = 0;
  auto operator<=>(const Obj&) const = default;
};

/// Dense index of an arrow inside one structure (lexicographic id order).
struct Arrow {
  std::uint32_t index = 0;
  auto operator<=>(const Arrow&) const = default;
};

/// String-level description of a finite category or groupoid, as read from
/// or written to a structure file.
struct CategoryData {
  struct ArrowSpec {
    std::string id;
    std::string source;
    std::string target;
  };

  std::vector<std::string> objects;
  std::vector<ArrowSpec> arrows;
  std::map<std::string, std::string> units;
  std::vector<std::array<std::string, 3>> compose;  // {a, b, a∘b}
  std::optional<std::map<std::string, std::string>> inverse;
};

using NameTable = std::vector<std::string>;

/// A finite category stored as fully materialised tables.
///
/// Construction only enforces well-formedness (every id referenced exists,
/// listed compositions are composable, units are total). The category axioms
/// are checked separately by validate_structure(), so an instance may
/// describe a structure that violates them.
class Category {
 public:
  Category() = default;

  /// Throws StructureError listing every well-formedness problem.
  static Category from_data(const CategoryData& data);

  /// Every well-formedness problem of `data`; empty iff from_data succeeds
  /// (ignoring the inverse table).
  static std::vector<std::string> structure_errors(const CategoryData& data);

  std::size_t object_count() const { return object_names_.size(); }
  std::size_t arrow_count() const { return arrow_names_->size(); }

  Obj object(std::string_view id) const;
  Arrow arrow(std::string_view id) const;
  std::optional<Arrow> find_arrow(std::string_view id) const;
  std::optional<Obj> find_object(std::string_view id) const;

  const std::string& name(Obj x) const { return object_names_.at(x.index); }
  const std::string& name(Arrow a) const { return (*arrow_names_).at(a.index); }
  const NameTable& object_names() const { return object_names_; }
  const NameTable& arrow_names() const { return *arrow_names_; }
  const std::shared_ptr<const NameTable>& shared_arrow_names() const { return arrow_names_; }

  Obj source(Arrow a) const { return source_[a.index]; }
  Obj target(Arrow a) const { return target_[a.index]; }
  Arrow unit(Obj x) const { return unit_[x.index]; }
  bool is_unit(Arrow a) const { return unit_[source(a).index] == a && source(a) == target(a); }
  bool composable(Arrow a, Arrow b) const { return source(a) == target(b); }

  /// The table entry for a∘b, or nothing when the pair is not composable or
  /// the entry is missing.
  std::optional<Arrow> try_compose(Arrow a, Arrow b) const;

  /// a∘b; throws CompositionError naming both arrows on a non-composable pair.
  Arrow compose(Arrow a, Arrow b) const;

  /// t⁻¹(x) in index order.
  std::span<const Arrow> target_fiber(Obj x) const { return target_fibers_[x.index]; }
  std::span<const Arrow> source_fiber(Obj x) const { return source_fibers_[x.index]; }

  CategoryData to_data() const;

  /// Reuse another structure's arrow-name table when the ids coincide, so
  /// elements over both share one context. Throws StructureError otherwise.
  void share_arrow_names(const std::shared_ptr<const NameTable>& names);

 protected:
  void build_fibers();

  NameTable object_names_;
  std::shared_ptr<const NameTable> arrow_names_ = std::make_shared<NameTable>();
  std::unordered_map<std::string, std::uint32_t> object_index_;
  std::unordered_map<std::string, std::uint32_t> arrow_index_;
  std::vector<Obj> source_;
  std::vector<Obj> target_;
  std::vector<Arrow> unit_;
  std::vector<std::int32_t> compose_;  // arrow_count² entries, -1 = undefined
  std::vector<std::vector<Arrow>> target_fibers_;
  std::vector<std::vector<Arrow>> source_fibers_;
};

/// A finite category with an explicit inverse table.
class Groupoid : public Category {
 public:
  Groupoid() = default;

  /// Requires `data.inverse` to be present and total.
  static Groupoid from_data(const CategoryData& data);

  Arrow inverse(Arrow a) const { return inverse_[a.index]; }

  /// Includes the inverse table.
  CategoryData to_data() const;

 private:
  std::vector<Arrow> inverse_;
};

/// Checks a string-level table: well-formedness first, then every category
/// axiom, then the groupoid axioms when an inverse table is supplied.
ValidationReport validate_structure(const CategoryData& data);
ValidationReport validate_structure(const Category& cat);
ValidationReport validate_structure(const Groupoid& gpd);

/// Left translation L_g: t⁻¹(s(g)) → t⁻¹(t(g)), h ↦ g∘h.
std::vector<Arrow> left_translate(const Groupoid& gpd, Arrow g);

// --- standard constructions -------------------------------------------------

/// One-object groupoid from a multiplication rule on `elements`
/// (mul(i, j) is the index of elements[i]·elements[j]). The identity and
/// inverses are computed; throws PreconditionError if the rule is not a group.
Groupoid make_group(const std::vector<std::string>& elements,
                    const std::function<std::size_t(std::size_t, std::size_t)>& mul,
                    const std::string& object = "*");

/// Z/n with elements "0".."n-1" under addition.
Groupoid cyclic_group(std::size_t n);

/// Pair groupoid X×X ⇉ X: arrow "(x,y)" has source y and target x.
Groupoid pair_groupoid(const std::vector<std::string>& points);

/// Groupoid whose arrows are exactly the units of `objects`.
Groupoid unit_groupoid(const std::vector<std::string>& objects);

/// Action groupoid G×X ⇉ X for a left action `act(g, x)` given on indices
/// of the group's arrows and of `points`. Arrow "(g,x)" has source x and
/// target g·x.
Groupoid action_groupoid(const Groupoid& group, const std::vector<std::string>& points,
                         const std::function<std::size_t(std::size_t, std::size_t)>& act);

/// "(a,b)": the label convention used for product-like arrow sets.
std::string pair_label(std::string_view a, std::string_view b);

}  // namespace dgpd
