#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "runbinom/parity.hpp"
#include "runbinom/rulesys.hpp"
#include "runbinom/transform.hpp"

namespace runbinom {

/// An alternative rule system kept alongside the canonical one, e.g. a
/// misprinted form that verification is expected to reject.
struct RuleVariant {
  std::string name;
  std::string note;
  RuleSystem rules;
};

/// One row of the catalog: a coefficient vector whose parity sums form the run
/// length transform of `base`, the residue rules those sums satisfy, and the
/// OEIS ids of the base sequence and of its transform (absent when unknown).
struct RegistryEntry {
  std::string name;
  std::vector<std::string> other_names;
  std::string description;
  CoefficientVector coefficients;
  LinearRecurrence base;
  RuleSystem rules;
  std::optional<std::string> oeis_sequence;
  std::optional<std::string> oeis_transform;
  /// Other coefficient vectors producing the same sums.
  std::vector<CoefficientVector> aliases;
  std::vector<RuleVariant> variants;

  BaseSequence base_sequence() const { return BaseSequence(base); }

  /// "canonical" (or empty) returns `rules`. Throws Error(not_found).
  const RuleSystem& rules_variant(std::string_view variant) const;
};

/// The ten built-in entries, in catalog order.
const std::vector<RegistryEntry>& builtin_entries();

/// Case-insensitive match on name, other names, or either A-number.
/// Throws Error(not_found).
const RegistryEntry& lookup(std::string_view name_or_anumber);

/// Entry whose coefficients or aliases equal c, if any.
const RegistryEntry* find_by_coefficients(const CoefficientVector& c);

/// Machine-readable catalog: one JSON object per line.
std::string export_catalog();

}  // namespace runbinom
