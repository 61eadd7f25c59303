#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odg/lexicon.hpp"
#include "odg/types.hpp"

namespace odg {

/// Read-only index over a DependencyStructure and its lexicon: heads,
/// dominance, domain ownership, insertion domains, and immediate members.
/// Tolerates malformed input; queries that cannot be answered return
/// nullopt/nullptr. The referenced structure and lexicon must outlive it.
class StructureView {
 public:
  /// An immediate member of a domain: a bare word, or a maximal proper
  /// sub-domain represented by its owner word.
  struct Member {
    WordIndex head = 0;
    WordIndex first = 0;
    WordIndex last = 0;
    const OrderDomain* domain = nullptr;  // nullptr for a bare word
  };

  struct DomainInfo {
    const OrderDomain* domain = nullptr;
    WordIndex owner = 0;
    bool owned = false;
    std::optional<std::size_t> slot;  // template ordinal in owner's entry
  };

  StructureView(const DependencyStructure& ds, const Lexicon& lex);

  const DependencyStructure& structure() const { return *ds_; }
  const Lexicon& lexicon() const { return *lex_; }
  std::size_t size() const { return n_; }
  bool contains_word(WordIndex w) const { return w >= 0 && static_cast<std::size_t>(w) < n_; }

  /// kRoot resolves to the selected root entry.
  const LexicalEntry* entry(WordIndex w) const;

  /// True when every word has exactly one head and all reach kRoot.
  bool tree_ok() const { return tree_ok_; }
  /// Unique head (kRoot for the root word).
  std::optional<WordIndex> head(WordIndex w) const;
  /// Incoming edge type; the root slot's dtype for the root word.
  std::optional<std::string_view> incoming_dtype(WordIndex w) const;
  /// Strict transitive head; kRoot dominates every word. Requires tree_ok().
  bool dominates(WordIndex ancestor, WordIndex w) const;
  /// Edge types on the tree path from `top` down to `bottom`, top first.
  /// nullopt if `top` does not dominate `bottom` (and top != bottom).
  std::optional<std::vector<std::string_view>> path_dtypes(WordIndex top,
                                                           WordIndex bottom) const;

  const OrderDomain* domain(std::string_view id) const;
  const DomainInfo* info(std::string_view id) const;
  const std::vector<DomainInfo>& domains() const { return infos_; }
  /// Domain sequence of w (kRoot allowed); empty if none.
  const std::vector<DomainRef>& assoc(WordIndex w) const;
  /// Realized domain filling template slot `slot` of `w`, if any.
  const OrderDomain* realized(WordIndex w, std::size_t slot) const;

  /// The domain of assoc(w) containing w, when unique.
  const OrderDomain* own_domain(WordIndex w) const;
  /// kRoot for the root word; the stored positional head otherwise.
  std::optional<WordIndex> positional(WordIndex w) const;
  /// The domain of assoc(positional(w)) containing w, when unique.
  const OrderDomain* insertion_domain(WordIndex w) const;

  /// Bare words plus maximal sub-domains, ordered by first word.
  std::vector<Member> immediate_members(const OrderDomain& d) const;

 private:
  const OrderDomain* unique_containing(WordIndex owner, WordIndex w) const;

  const DependencyStructure* ds_;
  const Lexicon* lex_;
  std::size_t n_ = 0;
  std::vector<const LexicalEntry*> entries_;
  const LexicalEntry* root_entry_ = nullptr;
  std::vector<std::optional<WordIndex>> heads_;
  std::vector<std::string_view> dtypes_;
  bool tree_ok_ = false;
  std::vector<DomainInfo> infos_;
  std::vector<const OrderDomain*> own_;
  std::vector<const OrderDomain*> insertion_;
};

}  // namespace odg
