#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

namespace dgpd {

/// A concrete counterexample: the ids involved plus a short explanation.
struct Witness {
  std::vector<std::string> ids;
  std::string detail;
};

/// Outcome of scanning one axiom over all its cases.
struct AxiomVerdict {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<Witness> witnesses;  // first kWitnessCap failures, in scan order

  static constexpr std::size_t kWitnessCap = 256;

  bool passed() const { return failures == 0; }
  void fail(Witness w) {
    ++failures;
    if (witnesses.size() < kWitnessCap) witnesses.push_back(std::move(w));
  }
};

/// Result of a structural validation.
///
/// `structural_errors` are problems with the table itself (dangling ids,
/// duplicates, listed non-composable pairs). They are kept apart from axiom
/// violations: when they are present no axiom scan is run. `components`
/// carries the reports of sub-structures (for double groupoids).
struct ValidationReport {
  std::string subject;
  std::vector<std::string> structural_errors;
  std::deque<AxiomVerdict> axioms;  // add_axiom references stay valid
  std::vector<ValidationReport> components;
  std::vector<std::string> notes;

  bool ok() const {
    if (!structural_errors.empty()) return false;
    for (const auto& a : axioms)
      if (!a.passed()) return false;
    for (const auto& c : components)
      if (!c.ok()) return false;
    return true;
  }

  const AxiomVerdict* axiom(const std::string& name) const {
    for (const auto& a : axioms)
      if (a.name == name) return &a;
    return nullptr;
  }

  AxiomVerdict& add_axiom(std::string name) {
    AxiomVerdict& v = axioms.emplace_back();
    v.name = std::move(name);
    return v;
  }
};

}  // namespace dgpd
