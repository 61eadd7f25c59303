#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace odg {

/// Surface position of a word. Words of a sentence occupy 0..n-1.
using WordIndex = int;

/// The implicit sentence root. It governs the finite verb and introduces
/// the top order domain, but never appears in the surface string.
inline constexpr WordIndex kRoot = -1;

/// Flat morphosyntactic features: attribute -> atomic value.
using FeatureSet = std::map<std::string, std::string, std::less<>>;

struct WordToken {
  WordIndex index = 0;
  std::string form;
  /// Ordinal among the lexicon entries sharing this form.
  std::size_t entry = 0;

  friend bool operator==(const WordToken&, const WordToken&) = default;
};

struct DependencyEdge {
  WordIndex head = 0;
  WordIndex dependent = 0;
  std::string dtype;

  friend auto operator<=>(const DependencyEdge&, const DependencyEdge&) = default;
};

/// Typed dependency tree plus the word-class map. The edge from the
/// implicit root to `root` is not stored in `edges`; its type is given by
/// the selected root entry of the lexicon.
struct DependencyTree {
  std::vector<WordToken> words;
  WordIndex root = 0;
  std::size_t root_entry = 0;
  std::vector<DependencyEdge> edges;
  std::map<WordIndex, std::string> classes;

  std::size_t size() const { return words.size(); }

  friend bool operator==(const DependencyTree&, const DependencyTree&) = default;
};

using FeatureMap = std::map<WordIndex, FeatureSet>;

/// A realized (non-empty) order domain.
struct OrderDomain {
  std::string id;
  std::set<WordIndex> members;

  friend bool operator==(const OrderDomain&, const OrderDomain&) = default;
};

/// One element of a word's domain sequence: the template slot it fills and
/// the realized domain filling it.
struct DomainRef {
  std::string slot;
  std::string id;

  friend bool operator==(const DomainRef&, const DomainRef&) = default;
};

struct OrderDomainStructure {
  std::vector<OrderDomain> domains;
  /// Word -> domain sequence, in template order. kRoot holds the top domain.
  std::map<WordIndex, std::vector<DomainRef>> assoc;

  const OrderDomain* find(std::string_view id) const;

  friend bool operator==(const OrderDomainStructure&,
                         const OrderDomainStructure&) = default;
};

struct DependencyStructure {
  DependencyTree tree;
  FeatureMap features;
  OrderDomainStructure domains;
  /// Positional head of each non-root word; kRoot is allowed.
  std::map<WordIndex, WordIndex> positional;

  friend bool operator==(const DependencyStructure&,
                         const DependencyStructure&) = default;
};

/// "ROOT" for kRoot, the decimal index otherwise.
std::string word_label(WordIndex w);

/// Forms joined by single spaces, in index order.
std::string surface_string(const DependencyTree& tree);

}  // namespace odg
