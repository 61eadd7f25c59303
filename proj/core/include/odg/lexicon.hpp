#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "odg/types.hpp"

namespace odg {

using SymbolSet = std::set<std::string, std::less<>>;

/// Declared symbol inventories: dependency types, word classes, and
/// attributes with their admissible values.
struct Inventory {
  SymbolSet dtypes;
  SymbolSet classes;
  std::map<std::string, SymbolSet, std::less<>> attributes;

  bool has_dtype(std::string_view d) const { return dtypes.contains(d); }
  bool has_class(std::string_view c) const { return classes.contains(c); }
  bool has_value(std::string_view attr, std::string_view value) const;

  friend bool operator==(const Inventory&, const Inventory&) = default;
};

enum class Direction { Precedes, Follows };

/// Ordering constraint scoped by the introducing word's domains.
///
/// SelfVsAll orders the introducer against every other immediate member of
/// its own domain (`self < *`, `self > *`). LabeledPair orders members whose
/// head words occupy the `left` dependency types against members occupying
/// the `right` types (`<vpart> after <subj,obj>`), in every domain of the
/// introducer unless `scope` narrows it to one template slot.
struct PrecedencePredicate {
  enum class Kind { SelfVsAll, LabeledPair };

  Kind kind = Kind::SelfVsAll;
  Direction direction = Direction::Precedes;
  SymbolSet left;
  SymbolSet right;
  std::optional<std::size_t> scope;

  friend bool operator==(const PrecedencePredicate&,
                         const PrecedencePredicate&) = default;
};

/// min is 0 or 1, max is 1 or unbounded (nullopt).
struct CardinalityConstraint {
  std::size_t slot = 0;
  unsigned min = 0;
  std::optional<unsigned> max;

  static CardinalityConstraint at_most_one(std::size_t slot) { return {slot, 0, 1}; }
  static CardinalityConstraint at_least_one(std::size_t slot) { return {slot, 1, std::nullopt}; }
  static CardinalityConstraint exactly_one(std::size_t slot) { return {slot, 1, 1}; }

  friend bool operator==(const CardinalityConstraint&,
                         const CardinalityConstraint&) = default;
};

struct DomainFeatureRequirement {
  std::size_t slot = 0;
  FeatureSet required;

  friend bool operator==(const DomainFeatureRequirement&,
                         const DomainFeatureRequirement&) = default;
};

/// Dependency types allowed on the path between a dependent's direct head
/// and its positional head. Empty means the two must coincide.
using ExtractionPathSet = SymbolSet;

enum class Optionality { Required, Optional };

struct ValencySlot {
  std::string dtype;
  Optionality optionality = Optionality::Optional;
  std::optional<std::string> word_class;  // nullopt: any class
  FeatureSet features;                    // required on the dependent
  ExtractionPathSet extraction;

  bool required() const { return optionality == Optionality::Required; }

  friend bool operator==(const ValencySlot&, const ValencySlot&) = default;
};

struct DomainTemplate {
  std::vector<std::string> slots;
  std::size_t self_slot = 0;
  std::vector<CardinalityConstraint> cardinalities;
  std::vector<DomainFeatureRequirement> requirements;

  std::optional<std::size_t> slot_index(std::string_view name) const;

  friend bool operator==(const DomainTemplate&, const DomainTemplate&) = default;
};

struct LexicalEntry {
  std::string form;
  std::string word_class;
  FeatureSet features;
  std::vector<ValencySlot> valency;
  DomainTemplate domains;
  std::vector<PrecedencePredicate> predicates;

  const ValencySlot* slot_for(std::string_view dtype) const;

  friend bool operator==(const LexicalEntry&, const LexicalEntry&) = default;
};

/// Form reserved for entries of the implicit sentence root.
inline constexpr std::string_view kRootForm = "ROOT";
/// Name of the single domain slot of a root entry.
inline constexpr std::string_view kRootSlot = "s";

struct Lexicon {
  Inventory inventory;
  /// Entries of the implicit root. Each has exactly one (required) valency
  /// slot, whose dtype labels the edge to the sentence's root word.
  std::vector<LexicalEntry> roots;
  std::map<std::string, std::vector<LexicalEntry>, std::less<>> entries;

  /// nullptr if `form` has fewer than ordinal+1 entries.
  const LexicalEntry* entry(std::string_view form, std::size_t ordinal) const;
  const LexicalEntry* root_entry(std::size_t ordinal) const;
  std::size_t entry_count() const;

  friend bool operator==(const Lexicon&, const Lexicon&) = default;
};

/// All entries for `form` (exact, case-sensitive), in ordinal order.
std::vector<const LexicalEntry*> entries_for(std::string_view form,
                                             const Lexicon& lex);

/// Parses and validates lexicon source. Throws LexiconError.
Lexicon load_lexicon(std::string_view source);
Lexicon load_lexicon_file(const std::string& path);

/// Canonical text form; load_lexicon(render_lexicon(l)) == l.
std::string render_lexicon(const Lexicon& lex);

/// Checks a programmatically built lexicon the same way load_lexicon
/// checks parsed source. Throws LexiconError with line 0.
void check_lexicon(const Lexicon& lex);

/// Human-readable inventory summary.
std::string summarize(const Lexicon& lex);

}  // namespace odg
