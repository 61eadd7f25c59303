#include "odg/validate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "odg/constraints.hpp"
#include "odg/error.hpp"
#include "odg/view.hpp"

namespace odg {

namespace {

bool in_range(WordIndex w, std::size_t n) {
  return w >= 0 && static_cast<std::size_t>(w) < n;
}

bool is_interval(const std::set<WordIndex>& s) {
  return s.empty() || static_cast<std::size_t>(*s.rbegin() - *s.begin() + 1) == s.size();
}

bool disjoint(const std::set<WordIndex>& a, const std::set<WordIndex>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return false;
    if (*i < *j) ++i; else ++j;
  }
  return true;
}

bool satisfies(const FeatureSet& have, const FeatureSet& need) {
  for (const auto& [attr, value] : need) {
    auto it = have.find(attr);
    if (it == have.end() || it->second != value) return false;
  }
  return true;
}

const FeatureSet& features_of(const FeatureMap& fm, WordIndex w) {
  static const FeatureSet kEmpty;
  auto it = fm.find(w);
  return it == fm.end() ? kEmpty : it->second;
}

std::string str(WordIndex w) { return word_label(w); }

}  // namespace

ValidationReport validate_tree(const DependencyTree& tree, const Inventory& inv) {
  ValidationReport report;
  const std::size_t n = tree.words.size();
  if (n == 0) {
    report.add("tree.words", {}, {}, "tree has no words");
    return report;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (tree.words[i].index != static_cast<WordIndex>(i))
      report.add("tree.words", {static_cast<WordIndex>(i)}, {},
                 "word indices must run 0..n-1 in order");
  }
  const bool root_ok = in_range(tree.root, n);
  if (!root_ok) report.add("tree.root", {tree.root}, {}, "root " + str(tree.root) + " is not a word");

  std::vector<std::vector<WordIndex>> heads(n);
  std::vector<std::vector<WordIndex>> deps(n);
  for (const auto& e : tree.edges) {
    if (!in_range(e.head, n) || !in_range(e.dependent, n)) {
      report.add("tree.edge", {e.head, e.dependent}, {},
                 "edge " + str(e.head) + " -" + e.dtype + "-> " + str(e.dependent) +
                     " refers to a missing word");
      continue;
    }
    if (e.head == e.dependent) {
      report.add("tree.acyclic", {e.head}, {}, "word " + str(e.head) + " governs itself");
      continue;
    }
    if (!inv.has_dtype(e.dtype))
      report.add("inventory", {e.head, e.dependent}, {}, "unknown dependency type '" + e.dtype + "'");
    heads[e.dependent].push_back(e.head);
    deps[e.head].push_back(e.dependent);
  }
  if (root_ok) heads[tree.root].insert(heads[tree.root].begin(), kRoot);

  for (std::size_t i = 0; i < n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    if (heads[i].empty()) {
      report.add("tree.connected", {w}, {}, "word " + str(w) + " has no head");
    } else if (heads[i].size() > 1) {
      std::string msg = "word " + str(w) + " has " + std::to_string(heads[i].size()) + " heads:";
      for (WordIndex h : heads[i]) msg += " " + str(h);
      std::vector<WordIndex> words{w};
      words.insert(words.end(), heads[i].begin(), heads[i].end());
      report.add("tree.single-head", std::move(words), {}, msg);
    }
  }

  // Reachability closure over the edges, for cycles and connectedness.
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t h = 0; h < n; ++h) {
    for (WordIndex d : deps[h]) reach[h][d] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;

  std::vector<char> reported(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!reach[i][i] || reported[i]) continue;
    std::vector<WordIndex> cycle;
    for (std::size_t j = 0; j < n; ++j) {
      if (reach[i][j] && reach[j][i]) {
        cycle.push_back(static_cast<WordIndex>(j));
        reported[j] = 1;
      }
    }
    std::string msg = "cycle through words";
    for (WordIndex w : cycle) msg += " " + str(w);
    report.add("tree.acyclic", std::move(cycle), {}, msg);
  }
  if (root_ok) {
    std::vector<WordIndex> unreachable;
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<WordIndex>(j) != tree.root && !reach[tree.root][j] && !heads[j].empty())
        unreachable.push_back(static_cast<WordIndex>(j));
    }
    if (!unreachable.empty()) {
      std::string msg = "not reachable from the root:";
      for (WordIndex w : unreachable) msg += " " + str(w);
      report.add("tree.connected", std::move(unreachable), {}, msg);
    }
  }

  for (const auto& [w, cls] : tree.classes) {
    if (!in_range(w, n)) report.add("tree.class", {w}, {}, "class assigned to missing word " + str(w));
  }
  for (std::size_t i = 0; i < n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    auto it = tree.classes.find(w);
    if (it == tree.classes.end()) {
      report.add("tree.class", {w}, {}, "word " + str(w) + " has no word class");
    } else if (!inv.has_class(it->second)) {
      report.add("inventory", {w}, {}, "unknown word class '" + it->second + "'");
    }
  }
  return report;
}

ValidationReport validate_domain_structure(const OrderDomainStructure& ods, std::size_t n_words) {
  ValidationReport report;
  const auto& ds = ods.domains;
  std::set<std::string> ids;
  for (const auto& d : ds) {
    if (d.id.empty()) report.add("domain.id", {}, {d.id}, "domain with empty id");
    if (!ids.insert(d.id).second) report.add("domain.id", {}, {d.id}, "duplicate domain id " + d.id);
    if (d.members.empty()) report.add("domain.empty", {}, {d.id}, "realized domain " + d.id + " is empty");
    for (WordIndex w : d.members) {
      if (!in_range(w, n_words))
        report.add("domain.range", {w}, {d.id}, "domain " + d.id + " contains missing word " + str(w));
    }
    if (!is_interval(d.members))
      report.add("domain.contiguity", {}, {d.id}, "domain " + d.id + " is not contiguous");
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      const auto& a = ds[i].members;
      const auto& b = ds[j].members;
      if (std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
          std::includes(b.begin(), b.end(), a.begin(), a.end()) || disjoint(a, b))
        continue;
      report.add("domain.hierarchy", {}, {ds[i].id, ds[j].id},
                 "domains " + ds[i].id + " and " + ds[j].id + " overlap without nesting");
    }
  }
  std::set<WordIndex> all;
  for (std::size_t i = 0; i < n_words; ++i) all.insert(static_cast<WordIndex>(i));
  if (std::none_of(ds.begin(), ds.end(), [&](const OrderDomain& d) { return d.members == all; }))
    report.add("domain.top", {}, {}, "no domain contains all words");
  return report;
}

bool edge_licensed(const LexicalEntry& head, std::string_view dtype,
                   const LexicalEntry& dependent) {
  const ValencySlot* slot = head.slot_for(dtype);
  if (!slot) return false;
  if (slot->word_class && *slot->word_class != dependent.word_class) return false;
  return satisfies(dependent.features, slot->features);
}

ValidationReport validate_dependency_layer(const DependencyTree& tree, const FeatureMap& features,
                                           const Lexicon& lex) {
  ValidationReport report = validate_tree(tree, lex.inventory);
  const std::size_t n = tree.words.size();

  std::vector<const LexicalEntry*> entries(n, nullptr);
  for (std::size_t i = 0; i < n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    const auto& tok = tree.words[i];
    entries[i] = lex.entry(tok.form, tok.entry);
    if (!entries[i]) {
      report.add("lexical.entry", {w}, {},
                 "no entry #" + std::to_string(tok.entry) + " for form '" + tok.form + "'");
      continue;
    }
    auto cls = tree.classes.find(w);
    if (cls != tree.classes.end() && cls->second != entries[i]->word_class)
      report.add("lexical.class", {w}, {},
                 "word " + str(w) + " has class " + cls->second + " but its entry has " +
                     entries[i]->word_class);
    if (features_of(features, w) != entries[i]->features)
      report.add("lexical.features", {w}, {}, "features of word " + str(w) + " differ from its entry");
  }
  for (const auto& [w, fs] : features) {
    if (!in_range(w, n)) report.add("lexical.features", {w}, {}, "features for missing word " + str(w));
  }
  const LexicalEntry* root = lex.root_entry(tree.root_entry);
  if (!root) report.add("lexical.entry", {kRoot}, {}, "no root entry #" + std::to_string(tree.root_entry));

  // Valency: every edge, the root edge included, fills a slot of its head.
  struct Dep {
    WordIndex dependent;
    std::string_view dtype;
  };
  std::vector<std::vector<Dep>> governed(n + 1);  // slot n holds the root
  auto index_of = [n](WordIndex h) { return h == kRoot ? n : static_cast<std::size_t>(h); };
  for (const auto& e : tree.edges) {
    if (in_range(e.head, n) && in_range(e.dependent, n) && e.head != e.dependent)
      governed[e.head].push_back({e.dependent, e.dtype});
  }
  if (root && in_range(tree.root, n) && !root->valency.empty())
    governed[n].push_back({tree.root, root->valency.front().dtype});

  auto class_of = [&](WordIndex w) -> std::string_view {
    auto it = tree.classes.find(w);
    return it == tree.classes.end() ? std::string_view{} : std::string_view(it->second);
  };
  for (WordIndex h = kRoot; h < static_cast<WordIndex>(n); ++h) {
    const LexicalEntry* he = h == kRoot ? root : entries[h];
    if (!he) continue;
    const auto& deps = governed[index_of(h)];
    for (const auto& d : deps) {
      const ValencySlot* slot = he->slot_for(d.dtype);
      if (!slot) {
        report.add("valency.unlicensed", {h, d.dependent}, {},
                   "head " + str(h) + " (" + he->form + ") has no slot " + std::string(d.dtype));
        continue;
      }
      if (slot->word_class && class_of(d.dependent) != *slot->word_class)
        report.add("valency.class", {h, d.dependent}, {},
                   "slot " + slot->dtype + " of " + str(h) + " requires class " +
                       *slot->word_class + " but word " + str(d.dependent) + " has " +
                       std::string(class_of(d.dependent)));
      if (!satisfies(features_of(features, d.dependent), slot->features))
        report.add("valency.features", {h, d.dependent}, {},
                   "word " + str(d.dependent) + " lacks features required by slot " +
                       slot->dtype + " of " + str(h));
    }
    for (const auto& slot : he->valency) {
      const auto filled = std::count_if(deps.begin(), deps.end(),
                                        [&](const Dep& d) { return d.dtype == slot.dtype; });
      if (filled > 1)
        report.add("valency.duplicate", {h}, {},
                   "slot " + slot.dtype + " of " + str(h) + " filled " + std::to_string(filled) + " times");
      if (filled == 0 && slot.required())
        report.add("valency.missing", {h}, {}, "required slot " + slot.dtype + " of " + str(h) + " is empty");
    }
  }
  return report;
}

ValidationReport validate_structure(const DependencyStructure& ds, const Lexicon& lex) {
  ValidationReport report = validate_dependency_layer(ds.tree, ds.features, lex);
  const std::size_t n = ds.tree.words.size();
  report.merge(validate_domain_structure(ds.domains, n));
  const StructureView view(ds, lex);
  const auto& assoc = ds.domains.assoc;

  // Domain sequences: resolvable ids, template slots in order, single owner.
  std::map<std::string, int, std::less<>> owners;
  for (const auto& [w, seq] : assoc) {
    if (w != kRoot && !in_range(w, n)) {
      report.add("assoc.word", {w}, {}, "domain sequence for missing word " + str(w));
      continue;
    }
    const LexicalEntry* e = view.entry(w);
    std::optional<std::size_t> prev;
    for (const auto& ref : seq) {
      ++owners[ref.id];
      if (!view.domain(ref.id))
        report.add("assoc.unknown-domain", {w}, {ref.id}, "unknown domain " + ref.id);
      if (!e) continue;
      auto slot = e->domains.slot_index(ref.slot);
      if (!slot) {
        report.add("assoc.slot", {w}, {ref.id}, "word " + str(w) + " has no template slot " + ref.slot);
      } else {
        if (prev && *slot <= *prev)
          report.add("assoc.slot", {w}, {ref.id},
                     "domain sequence of word " + str(w) + " is not in template order");
        prev = slot;
      }
    }
  }
  for (const auto& d : ds.domains.domains) {
    auto it = owners.find(d.id);
    const int count = it == owners.end() ? 0 : it->second;
    if (count != 1)
      report.add("assoc.owner", {}, {d.id},
                 "domain " + d.id + " belongs to " + std::to_string(count) + " domain sequences");
  }
  {
    const auto& top = view.assoc(kRoot);
    const OrderDomain* d = top.size() == 1 ? view.domain(top.front().id) : nullptr;
    if (top.size() != 1 || top.front().slot != kRootSlot || !d || d->members.size() != n)
      report.add("assoc.root", {kRoot}, {},
                 "the root must introduce exactly one domain, slot s, containing all words");
  }

  for (std::size_t i = 0; i < n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    const auto& seq = view.assoc(w);
    if (!assoc.contains(w)) report.add("assoc.missing", {w}, {}, "word " + str(w) + " has no domain sequence");

    // (1) exactly one own domain, and it fills the self slot.
    std::vector<std::string> holding;
    for (const auto& ref : seq) {
      const OrderDomain* d = view.domain(ref.id);
      if (d && d->members.contains(w)) holding.push_back(ref.id);
    }
    if (holding.size() != 1) {
      report.add("cond1", {w}, holding,
                 "word " + str(w) + " must be contained in exactly one of the domains of its own "
                 "sequence, found " + std::to_string(holding.size()));
    } else if (const LexicalEntry* e = view.entry(w)) {
      auto ref = std::find_if(seq.begin(), seq.end(), [&](const DomainRef& r) { return r.id == holding[0]; });
      if (ref->slot != e->domains.slots[e->domains.self_slot])
        report.add("assoc.self", {w}, holding,
                   "word " + str(w) + " sits in slot " + ref->slot + ", not its self slot " +
                       e->domains.slots[e->domains.self_slot]);
    }
  }

  // (2) sequences are pairwise disjoint.
  for (const auto& [w, seq] : assoc) {
    for (std::size_t a = 0; a < seq.size(); ++a) {
      for (std::size_t b = a + 1; b < seq.size(); ++b) {
        const OrderDomain* da = view.domain(seq[a].id);
        const OrderDomain* db = view.domain(seq[b].id);
        if (da && db && !disjoint(da->members, db->members))
          report.add("cond2", {w}, {seq[a].id, seq[b].id},
                     "domains of word " + str(w) + " must be pairwise disjoint: " + seq[a].id +
                         " and " + seq[b].id + " overlap");
      }
    }
  }

  // Positional heads.
  for (const auto& [w, p] : ds.positional) {
    if (!in_range(w, n)) {
      report.add("positional.word", {w}, {}, "positional head given for missing word " + str(w));
    } else if (w == ds.tree.root && p != kRoot) {
      report.add("positional.root", {w}, {}, "the root word is positioned by ROOT only");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    if (w == ds.tree.root) continue;
    auto it = ds.positional.find(w);
    if (it == ds.positional.end()) {
      report.add("positional.missing", {w}, {}, "word " + str(w) + " has no positional head");
    } else if (view.tree_ok() && !view.dominates(it->second, w)) {
      report.add("positional", {w, it->second}, {},
                 "positional head " + str(it->second) + " of word " + str(w) + " is not a transitive head");
    }
  }

  // (3) at least two domains, one from a transitive head's sequence.
  for (std::size_t i = 0; i < n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    if (w == ds.tree.root) continue;
    const auto containing = std::count_if(ds.domains.domains.begin(), ds.domains.domains.end(),
                                          [&](const OrderDomain& d) { return d.members.contains(w); });
    bool via_head = false;
    if (view.tree_ok()) {
      for (const auto& [h, seq] : assoc) {
        if (h == w || !view.dominates(h, w)) continue;
        for (const auto& ref : seq) {
          const OrderDomain* d = view.domain(ref.id);
          via_head = via_head || (d && d->members.contains(w));
        }
      }
    }
    if (containing < 2 || !via_head)
      report.add("cond3", {w}, {},
                 "word " + str(w) + " must be contained in at least two domains, one of them "
                 "associated with a transitive head");
  }

  // Linking: insertion into the positional head's domains, exact nesting.
  for (std::size_t i = 0; i < n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    auto p = view.positional(w);
    if (p && !view.insertion_domain(w))
      report.add("link.insertion", {w, *p}, {},
                 "word " + str(w) + " is not in exactly one domain of its positional head " + str(*p));
  }
  for (const auto& info : view.domains()) {
    const OrderDomain& d = *info.domain;
    std::set<WordIndex> expected;
    bool overlap = false;
    auto add_all = [&](const std::set<WordIndex>& s) {
      for (WordIndex x : s) overlap = !expected.insert(x).second || overlap;
    };
    for (std::size_t i = 0; i < n; ++i) {
      const WordIndex w = static_cast<WordIndex>(i);
      if (view.own_domain(w) == &d) add_all({w});
      if (view.insertion_domain(w) != &d) continue;
      for (const auto& ref : view.assoc(w)) {
        const OrderDomain* sub = view.domain(ref.id);
        if (sub && sub != &d) add_all(sub->members);
      }
    }
    if (overlap || expected != d.members)
      report.add("link.nesting", {}, {d.id},
                 "domain " + d.id + " is not the union of its own words and the domains inserted into it");
  }
  for (const auto& [w, seq] : assoc) {
    std::set<WordIndex> block;
    for (const auto& ref : seq) {
      if (const OrderDomain* d = view.domain(ref.id)) block.insert(d->members.begin(), d->members.end());
    }
    if (!is_interval(block))
      report.add("link.block", {w}, {}, "the domains of word " + str(w) + " do not form a contiguous block");
  }

  // (4) sequence order agrees with surface precedence.
  for (const auto& [w, seq] : assoc) {
    for (std::size_t a = 0; a < seq.size(); ++a) {
      for (std::size_t b = a + 1; b < seq.size(); ++b) {
        const OrderDomain* da = view.domain(seq[a].id);
        const OrderDomain* db = view.domain(seq[b].id);
        if (!da || !db || da->members.empty() || db->members.empty()) continue;
        if (*da->members.rbegin() >= *db->members.begin())
          report.add("cond4", {w}, {seq[a].id, seq[b].id},
                     "domain sequence of word " + str(w) + " is not consistent with the precedence: " +
                         seq[a].id + " must precede " + seq[b].id);
      }
    }
  }

  // Extraction paths.
  if (view.tree_ok()) {
    for (std::size_t i = 0; i < n; ++i) {
      const WordIndex w = static_cast<WordIndex>(i);
      const auto h = view.head(w);
      const auto p = view.positional(w);
      const auto dtype = view.incoming_dtype(w);
      const LexicalEntry* he = h ? view.entry(*h) : nullptr;
      const ValencySlot* slot = he && dtype ? he->slot_for(*dtype) : nullptr;
      if (!slot || !p || !view.dominates(*p, w)) continue;
      report.merge(check_extraction(*slot, w, view));
    }
  }

  for (std::size_t i = 0; i < n; ++i) report.merge(check_lexical_constraints(static_cast<WordIndex>(i), view));
  return report;
}

bool is_valid(const DependencyStructure& ds, const Lexicon& lex) {
  return validate_structure(ds, lex).ok();
}

std::vector<WordIndex> surface_order(const DependencyStructure& ds) {
  const std::size_t n = ds.tree.words.size();
  for (const auto& d : ds.domains.domains) {
    for (WordIndex w : d.members) {
      if (!in_range(w, n)) throw InconsistentOrder("domain " + d.id + " contains missing word " + str(w));
    }
    if (!is_interval(d.members))
      throw InconsistentOrder("domain " + d.id + " is not contiguous in the stored order");
  }
  for (const auto& [w, seq] : ds.domains.assoc) {
    for (std::size_t a = 0; a < seq.size(); ++a) {
      for (std::size_t b = a + 1; b < seq.size(); ++b) {
        const OrderDomain* da = ds.domains.find(seq[a].id);
        const OrderDomain* db = ds.domains.find(seq[b].id);
        if (!da || !db) throw InconsistentOrder("unknown domain in sequence of word " + str(w));
        if (!da->members.empty() && !db->members.empty() &&
            *da->members.rbegin() >= *db->members.begin())
          throw InconsistentOrder("stored order puts " + db->id + " before " + da->id +
                                  " against the sequence of word " + str(w));
      }
    }
  }
  std::vector<WordIndex> order(n);
  std::iota(order.begin(), order.end(), 0);
  return order;
}

}  // namespace odg
