// Search procedures: generation (tree -> orders) and parsing (tokens ->
// structures). Both enumerate positional heads licensed by extraction sets,
// then template-slot choices, and keep only candidates the validator accepts.

#include "odg/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "odg/error.hpp"
#include "odg/serialize.hpp"
#include "odg/validate.hpp"

namespace odg {

namespace {

class Budget {
 public:
  Budget(SearchStats& stats, std::uint64_t cap) : stats_(stats), cap_(cap) {}
  void tick() {
    if (++stats_.candidates > cap_) throw ResourceExceeded(cap_);
  }

 private:
  SearchStats& stats_;
  std::uint64_t cap_;
};

// A dependency tree over words 0..n-1 with resolved lexical entries.
struct Tree {
  std::size_t n = 0;
  std::vector<std::string> forms;
  std::vector<std::size_t> ordinals;
  std::vector<const LexicalEntry*> entries;
  std::size_t root_ordinal = 0;
  const LexicalEntry* root_entry = nullptr;
  WordIndex root = 0;
  std::vector<WordIndex> head;
  std::vector<std::string> dtype;

  const LexicalEntry& entry(WordIndex w) const { return w == kRoot ? *root_entry : *entries[w]; }
};

// Owners are kRoot and the words; slot o+1 in per-owner tables.
std::size_t owner_slot(WordIndex o) { return static_cast<std::size_t>(o + 1); }

struct Layout {
  std::vector<WordIndex> pos;
  std::vector<std::size_t> slot;
};

using Members = std::vector<WordIndex>;  // sorted

// Words licensed as positional heads: the direct head, then every higher
// head as long as the path stays inside the slot's extraction set.
std::vector<std::vector<WordIndex>> positional_candidates(const Tree& t) {
  std::vector<std::vector<WordIndex>> out(t.n);
  for (std::size_t i = 0; i < t.n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    if (w == t.root) {
      out[i] = {kRoot};
      continue;
    }
    const WordIndex h = t.head[i];
    const ValencySlot* slot = t.entry(h).slot_for(t.dtype[i]);
    if (!slot) continue;
    out[i].push_back(h);
    for (WordIndex x = h; x != kRoot && slot->extraction.contains(t.dtype[x]);) {
      x = t.head[x];
      out[i].push_back(x);
    }
  }
  return out;
}

std::vector<std::vector<WordIndex>> positional_children(const Tree& t, const std::vector<WordIndex>& pos) {
  std::vector<std::vector<WordIndex>> kids(t.n + 1);
  for (std::size_t i = 0; i < t.n; ++i) kids[owner_slot(pos[i])].push_back(static_cast<WordIndex>(i));
  return kids;
}

// Word set of each positional subtree.
std::vector<Members> blocks_of(const Tree& t, const std::vector<std::vector<WordIndex>>& kids) {
  std::vector<Members> blocks(t.n);
  std::function<const Members&(WordIndex)> build = [&](WordIndex w) -> const Members& {
    Members& b = blocks[w];
    if (!b.empty()) return b;
    b.push_back(w);
    for (WordIndex v : kids[owner_slot(w)]) {
      const Members& sub = build(v);
      b.insert(b.end(), sub.begin(), sub.end());
    }
    std::sort(b.begin(), b.end());
    return b;
  };
  for (std::size_t i = 0; i < t.n; ++i) build(static_cast<WordIndex>(i));
  return blocks;
}

bool is_interval(const Members& m) {
  return m.empty() || static_cast<std::size_t>(m.back() - m.front() + 1) == m.size();
}

// Members of each (owner, slot) domain.
std::vector<std::vector<Members>> domain_members(const Tree& t, const Layout& layout,
                                                 const std::vector<std::vector<WordIndex>>& kids,
                                                 const std::vector<Members>& blocks) {
  std::vector<std::vector<Members>> table(t.n + 1);
  for (WordIndex o = kRoot; o < static_cast<WordIndex>(t.n); ++o) {
    const auto& tpl = t.entry(o).domains;
    auto& slots = table[owner_slot(o)];
    slots.assign(tpl.slots.size(), {});
    if (o != kRoot) slots[tpl.self_slot].push_back(o);
    for (WordIndex v : kids[owner_slot(o)]) {
      auto& m = slots[layout.slot[v]];
      m.insert(m.end(), blocks[v].begin(), blocks[v].end());
    }
    for (auto& m : slots) std::sort(m.begin(), m.end());
  }
  return table;
}

DependencyStructure assemble(const Tree& t, const Layout& layout,
                             const std::vector<std::vector<Members>>& table) {
  DependencyStructure ds;
  auto& tree = ds.tree;
  for (std::size_t i = 0; i < t.n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    tree.words.push_back({w, t.forms[i], t.ordinals[i]});
    tree.classes[w] = t.entries[i]->word_class;
    ds.features[w] = t.entries[i]->features;
  }
  tree.root = t.root;
  tree.root_entry = t.root_ordinal;
  for (std::size_t i = 0; i < t.n; ++i) {
    if (static_cast<WordIndex>(i) != t.root)
      tree.edges.push_back({t.head[i], static_cast<WordIndex>(i), t.dtype[i]});
  }
  for (WordIndex o = kRoot; o < static_cast<WordIndex>(t.n); ++o) {
    const auto& tpl = t.entry(o).domains;
    const auto& slots = table[owner_slot(o)];
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (slots[s].empty()) continue;
      std::string id = word_label(o) + "." + tpl.slots[s];
      ds.domains.domains.push_back({id, std::set<WordIndex>(slots[s].begin(), slots[s].end())});
      ds.domains.assoc[o].push_back({tpl.slots[s], std::move(id)});
    }
  }
  for (std::size_t i = 0; i < t.n; ++i) {
    if (static_cast<WordIndex>(i) != t.root) ds.positional[static_cast<WordIndex>(i)] = layout.pos[i];
  }
  return ds;
}

// Odometer over per-position option counts; calls f until it returns false.
template <typename F>
void for_each_choice(const std::vector<std::size_t>& sizes, F&& f) {
  if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 0; })) return;
  std::vector<std::size_t> idx(sizes.size(), 0);
  for (;;) {
    f(idx);
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == sizes[k]) idx[k++] = 0;
    if (k == idx.size()) return;
  }
}

// Enumerates positional maps of `t`.
template <typename F>
void for_each_positional(const Tree& t, const std::vector<std::vector<WordIndex>>& cands, F&& f) {
  std::vector<std::size_t> sizes;
  for (const auto& c : cands) sizes.push_back(c.size());
  std::vector<WordIndex> pos(t.n);
  for_each_choice(sizes, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t i = 0; i < t.n; ++i) pos[i] = cands[i][idx[i]];
    f(pos);
  });
}

class Diagnostics {
 public:
  void stage(const std::string& note) { stages_.insert(note); }
  void rejected(const ValidationReport& report) {
    for (const auto& v : report.violations()) {
      auto& [count, example] = tally_[v.condition];
      if (count++ == 0) example = v.message;
    }
  }
  std::vector<std::string> lines() const {
    std::vector<std::string> out(stages_.begin(), stages_.end());
    for (const auto& [cond, ce] : tally_)
      out.push_back("[" + cond + "] x" + std::to_string(ce.first) + ", e.g. " + ce.second);
    return out;
  }

 private:
  std::set<std::string> stages_;
  std::map<std::string, std::pair<std::size_t, std::string>> tally_;
};

// ---------------------------------------------------------------- parsing

// Valency-driven top-down attachment from the root. Each tree is produced
// once: heads are expanded in attachment order, slots in entry order.
class TreeSearch {
 public:
  TreeSearch(Tree& t, bool prune, Budget& budget, std::function<void()> emit)
      : t_(t), prune_(prune), budget_(budget), emit_(std::move(emit)) {}

  void run() {
    const ValencySlot& root_slot = t_.root_entry->valency.front();
    t_.head.assign(t_.n, kRoot);
    t_.dtype.assign(t_.n, {});
    attached_.assign(t_.n, false);
    for (std::size_t i = 0; i < t_.n; ++i) {
      if (!edge_licensed(*t_.root_entry, root_slot.dtype, *t_.entries[i])) continue;
      t_.root = static_cast<WordIndex>(i);
      t_.dtype[i] = root_slot.dtype;
      attach(t_.root);
      expand(0, 0);
      detach(t_.root);
    }
  }

 private:
  void attach(WordIndex w) {
    attached_[w] = true;
    queue_.push_back(w);
    ++count_;
  }
  void detach(WordIndex w) {
    attached_[w] = false;
    queue_.pop_back();
    --count_;
  }

  std::size_t pending_required(std::size_t qpos, std::size_t sidx) const {
    std::size_t need = 0;
    for (std::size_t q = qpos; q < queue_.size(); ++q) {
      const auto& val = t_.entries[queue_[q]]->valency;
      for (std::size_t s = q == qpos ? sidx : 0; s < val.size(); ++s) need += val[s].required();
    }
    return need;
  }

  void expand(std::size_t qpos, std::size_t sidx) {
    budget_.tick();
    if (prune_ && pending_required(qpos, sidx) > t_.n - count_) return;
    if (qpos == queue_.size()) {
      if (count_ == t_.n) emit_();
      return;
    }
    const WordIndex h = queue_[qpos];
    const auto& val = t_.entries[h]->valency;
    if (sidx == val.size()) {
      expand(qpos + 1, 0);
      return;
    }
    const ValencySlot& slot = val[sidx];
    if (!slot.required()) expand(qpos, sidx + 1);
    for (std::size_t i = 0; i < t_.n; ++i) {
      const WordIndex w = static_cast<WordIndex>(i);
      if (attached_[i] || !edge_licensed(*t_.entries[h], slot.dtype, *t_.entries[i])) continue;
      t_.head[i] = h;
      t_.dtype[i] = slot.dtype;
      attach(w);
      expand(qpos, sidx + 1);
      detach(w);
    }
  }

  Tree& t_;
  bool prune_;
  Budget& budget_;
  std::function<void()> emit_;
  std::vector<bool> attached_;
  std::vector<WordIndex> queue_;
  std::size_t count_ = 0;
};

// Slot assignments of one owner's positional children that keep each of
// its domains contiguous and its domain sequence in surface order.
std::vector<std::vector<std::size_t>> local_slot_options(const Tree& t, WordIndex o,
                                                         const std::vector<WordIndex>& kids,
                                                         const std::vector<Members>& blocks,
                                                         Budget& budget) {
  const auto& tpl = t.entry(o).domains;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> sizes(kids.size(), tpl.slots.size());
  for_each_choice(sizes, [&](const std::vector<std::size_t>& choice) {
    budget.tick();
    std::vector<Members> doms(tpl.slots.size());
    if (o != kRoot) doms[tpl.self_slot].push_back(o);
    for (std::size_t k = 0; k < kids.size(); ++k) {
      auto& m = doms[choice[k]];
      m.insert(m.end(), blocks[kids[k]].begin(), blocks[kids[k]].end());
    }
    WordIndex last = -1;
    for (auto& m : doms) {
      if (m.empty()) continue;
      std::sort(m.begin(), m.end());
      if (!is_interval(m) || m.front() <= last) return;
      last = m.back();
    }
    out.push_back(choice);
  });
  if (sizes.empty()) out = {{}};
  return out;
}

}  // namespace

ParseResult parse(std::span<const std::string> tokens, const Lexicon& lex, const SearchOptions& options) {
  if (tokens.empty()) throw Error("empty input");
  ParseResult result;
  Budget budget(result.stats, options.max_candidates);
  Diagnostics diag;
  std::map<std::string, DependencyStructure> found;

  const std::size_t n = tokens.size();
  std::vector<std::vector<const LexicalEntry*>> readings(n);
  for (std::size_t i = 0; i < n; ++i) {
    readings[i] = entries_for(tokens[i], lex);
    if (readings[i].empty()) throw UnknownToken(tokens[i]);
  }
  if (lex.roots.empty()) diag.stage("lexicon has no root entry");

  auto consider = [&](const Tree& t, const Layout& layout,
                      const std::vector<std::vector<WordIndex>>& kids,
                      const std::vector<Members>& blocks) {
    budget.tick();
    DependencyStructure ds = assemble(t, layout, domain_members(t, layout, kids, blocks));
    ++result.stats.validated;
    ValidationReport report = validate_structure(ds, lex);
    if (!report.ok()) {
      diag.rejected(report);
      return;
    }
    std::string key = canonical_form(ds);
    found.emplace(std::move(key), std::move(ds));
  };

  auto on_tree = [&](const Tree& t) {
    ++result.stats.trees;
    const auto cands = positional_candidates(t);
    for_each_positional(t, cands, [&](const std::vector<WordIndex>& pos) {
      budget.tick();
      Layout layout{pos, std::vector<std::size_t>(n, 0)};
      const auto kids = positional_children(t, pos);
      const auto blocks = blocks_of(t, kids);
      if (!options.prune) {
        std::vector<std::size_t> sizes(n);
        for (std::size_t i = 0; i < n; ++i) sizes[i] = t.entry(pos[i]).domains.slots.size();
        for_each_choice(sizes, [&](const std::vector<std::size_t>& choice) {
          layout.slot = choice;
          consider(t, layout, kids, blocks);
        });
        return;
      }
      if (!std::all_of(blocks.begin(), blocks.end(), is_interval)) {
        diag.stage("no positional attachment keeps every constituent contiguous");
        return;
      }
      std::vector<std::vector<std::vector<std::size_t>>> local(n + 1);
      std::vector<std::size_t> sizes(n + 1);
      for (WordIndex o = kRoot; o < static_cast<WordIndex>(n); ++o) {
        local[owner_slot(o)] = local_slot_options(t, o, kids[owner_slot(o)], blocks, budget);
        sizes[owner_slot(o)] = local[owner_slot(o)].size();
      }
      if (std::find(sizes.begin(), sizes.end(), 0) != sizes.end())
        diag.stage("no slot assignment keeps every domain contiguous and in sequence order");
      for_each_choice(sizes, [&](const std::vector<std::size_t>& idx) {
        for (WordIndex o = kRoot; o < static_cast<WordIndex>(n); ++o) {
          const auto& choice = local[owner_slot(o)][idx[owner_slot(o)]];
          const auto& ks = kids[owner_slot(o)];
          for (std::size_t k = 0; k < ks.size(); ++k) layout.slot[ks[k]] = choice[k];
        }
        consider(t, layout, kids, blocks);
      });
    });
  };

  std::vector<std::size_t> sizes;
  for (const auto& r : readings) sizes.push_back(r.size());
  for_each_choice(sizes, [&](const std::vector<std::size_t>& idx) {
    for (std::size_t r = 0; r < lex.roots.size(); ++r) {
      Tree t;
      t.n = n;
      t.forms.assign(tokens.begin(), tokens.end());
      t.ordinals = idx;
      for (std::size_t i = 0; i < n; ++i) t.entries.push_back(readings[i][idx[i]]);
      t.root_ordinal = r;
      t.root_entry = &lex.roots[r];
      TreeSearch(t, options.prune, budget, [&] { on_tree(t); }).run();
    }
  });

  if (result.stats.trees == 0) diag.stage("no dependency tree is licensed by the valency frames");
  for (auto& [key, ds] : found) result.structures.push_back(std::move(ds));
  if (result.structures.empty()) result.diagnostics = diag.lines();
  return result;
}

// ------------------------------------------------------------- generation

namespace {

class Linearizer {
 public:
  Linearizer(const Tree& t, const Layout& layout, const std::vector<std::vector<WordIndex>>& kids,
             const std::vector<std::vector<Members>>& table, Budget& budget)
      : t_(t), layout_(layout), kids_(kids), table_(table), budget_(budget) {}

  std::vector<Members> run() { return domain(kRoot, 0); }

 private:
  std::vector<Members> block(WordIndex v) {
    std::vector<Members> acc{{}};
    const auto& slots = table_[owner_slot(v)];
    for (std::size_t s = 0; s < slots.size(); ++s) {
      if (slots[s].empty()) continue;
      acc = concat(acc, domain(v, s));
    }
    return acc;
  }

  static std::vector<Members> concat(const std::vector<Members>& a, const std::vector<Members>& b) {
    std::vector<Members> out;
    for (const auto& x : a) {
      for (const auto& y : b) {
        Members m = x;
        m.insert(m.end(), y.begin(), y.end());
        out.push_back(std::move(m));
      }
    }
    return out;
  }

  // Unit order respects the owner's precedence predicates for this domain.
  bool admissible(WordIndex o, std::size_t s, const std::vector<WordIndex>& units) const {
    if (o == kRoot) return true;
    const LexicalEntry& e = t_.entry(o);
    for (const auto& p : e.predicates) {
      if (p.kind == PrecedencePredicate::Kind::SelfVsAll) {
        if (s != e.domains.self_slot) continue;
        const WordIndex edge = p.direction == Direction::Precedes ? units.front() : units.back();
        if (edge != o) return false;
        continue;
      }
      if (p.scope && *p.scope != s) continue;
      for (std::size_t a = 0; a < units.size(); ++a) {
        if (units[a] == o || !p.left.contains(t_.dtype[units[a]])) continue;
        for (std::size_t b = 0; b < units.size(); ++b) {
          if (b == a || units[b] == o || !p.right.contains(t_.dtype[units[b]])) continue;
          if (p.direction == Direction::Precedes ? a > b : a < b) return false;
        }
      }
    }
    return true;
  }

  std::vector<Members> domain(WordIndex o, std::size_t s) {
    std::vector<WordIndex> units;
    const auto& tpl = t_.entry(o).domains;
    if (o != kRoot && s == tpl.self_slot) units.push_back(o);
    for (WordIndex v : kids_[owner_slot(o)]) {
      if (layout_.slot[v] == s) units.push_back(v);
    }
    std::map<WordIndex, std::vector<Members>> lins;
    for (WordIndex u : units) lins[u] = u == o ? std::vector<Members>{{o}} : block(u);

    std::vector<Members> out;
    std::sort(units.begin(), units.end());
    do {
      budget_.tick();
      if (!admissible(o, s, units)) continue;
      std::vector<Members> acc{{}};
      for (WordIndex u : units) acc = concat(acc, lins[u]);
      out.insert(out.end(), acc.begin(), acc.end());
    } while (std::next_permutation(units.begin(), units.end()));
    return out;
  }

  const Tree& t_;
  const Layout& layout_;
  const std::vector<std::vector<WordIndex>>& kids_;
  const std::vector<std::vector<Members>>& table_;
  Budget& budget_;
};

// The same tree and layout with words renumbered so that `order[i]` becomes i.
std::pair<Tree, Layout> reindex(const Tree& t, const Layout& layout, const Members& order) {
  std::vector<WordIndex> inv(t.n);
  for (std::size_t i = 0; i < t.n; ++i) inv[order[i]] = static_cast<WordIndex>(i);
  auto map = [&](WordIndex w) { return w == kRoot ? kRoot : inv[w]; };
  Tree r = t;
  Layout l = layout;
  for (std::size_t i = 0; i < t.n; ++i) {
    const WordIndex old = order[i];
    r.forms[i] = t.forms[old];
    r.ordinals[i] = t.ordinals[old];
    r.entries[i] = t.entries[old];
    r.head[i] = map(t.head[old]);
    r.dtype[i] = t.dtype[old];
    l.pos[i] = map(layout.pos[old]);
    l.slot[i] = layout.slot[old];
  }
  r.root = map(t.root);
  return {std::move(r), std::move(l)};
}

}  // namespace

GenerationResult generate(const DependencyTree& input, const Lexicon& lex, const SearchOptions& options) {
  const ValidationReport tree_report = validate_tree(input, lex.inventory);
  if (!tree_report.ok()) throw Error("invalid tree:\n" + tree_report.render());

  Tree t;
  t.n = input.words.size();
  for (const auto& tok : input.words) {
    const LexicalEntry* e = lex.entry(tok.form, tok.entry);
    if (!e) throw Error("unbound token " + std::to_string(tok.index) + " '" + tok.form + "'");
    if (input.classes.at(tok.index) != e->word_class)
      throw Error("inconsistent entry class for token " + std::to_string(tok.index) + " '" +
                  tok.form + "': tree says " + input.classes.at(tok.index) + ", entry says " +
                  e->word_class);
    t.forms.push_back(tok.form);
    t.ordinals.push_back(tok.entry);
    t.entries.push_back(e);
  }
  t.root_ordinal = input.root_entry;
  t.root_entry = lex.root_entry(input.root_entry);
  if (!t.root_entry) throw Error("unbound root entry #" + std::to_string(input.root_entry));
  t.root = input.root;
  t.head.assign(t.n, kRoot);
  t.dtype.assign(t.n, t.root_entry->valency.front().dtype);
  for (const auto& e : input.edges) {
    t.head[e.dependent] = e.head;
    t.dtype[e.dependent] = e.dtype;
  }

  GenerationResult result;
  Budget budget(result.stats, options.max_candidates);
  result.stats.trees = 1;
  std::map<std::pair<std::string, std::string>, DependencyStructure> found;

  auto consider = [&](const Tree& tree, const Layout& layout) {
    budget.tick();
    const auto kids = positional_children(tree, layout.pos);
    const auto blocks = blocks_of(tree, kids);
    DependencyStructure ds = assemble(tree, layout, domain_members(tree, layout, kids, blocks));
    if (!validate_domain_structure(ds.domains, tree.n).ok()) return;
    ++result.stats.validated;
    if (!is_valid(ds, lex)) return;
    std::string surface = surface_string(ds.tree);
    std::string key = canonical_form(ds);
    found.emplace(std::make_pair(std::move(surface), std::move(key)), std::move(ds));
  };

  const auto cands = positional_candidates(t);
  std::vector<WordIndex> identity(t.n);
  std::iota(identity.begin(), identity.end(), 0);

  for_each_positional(t, cands, [&](const std::vector<WordIndex>& pos) {
    budget.tick();
    const auto kids = positional_children(t, pos);
    const auto blocks = blocks_of(t, kids);
    std::vector<std::size_t> sizes(t.n);
    for (std::size_t i = 0; i < t.n; ++i) sizes[i] = t.entry(pos[i]).domains.slots.size();
    for_each_choice(sizes, [&](const std::vector<std::size_t>& choice) {
      budget.tick();
      const Layout layout{pos, choice};
      if (!options.prune) {
        // Membership does not depend on the order, so orders that split a
        // domain are dropped here; the full check still runs on the rest.
        const auto table = domain_members(t, layout, kids, blocks);
        Members order = identity;
        std::vector<std::size_t> at(t.n);
        do {
          for (std::size_t i = 0; i < t.n; ++i) at[order[i]] = i;
          const bool split = std::any_of(table.begin(), table.end(), [&](const auto& slots) {
            return std::any_of(slots.begin(), slots.end(), [&](const Members& m) {
              if (m.empty()) return false;
              const auto [lo, hi] = std::minmax_element(m.begin(), m.end(),
                                                        [&](WordIndex a, WordIndex b) { return at[a] < at[b]; });
              return at[*hi] - at[*lo] + 1 != m.size();
            });
          });
          if (split) {
            budget.tick();
            continue;
          }
          auto [rt, rl] = reindex(t, layout, order);
          consider(rt, rl);
        } while (std::next_permutation(order.begin(), order.end()));
        return;
      }
      const auto table = domain_members(t, layout, kids, blocks);
      for (const Members& order : Linearizer(t, layout, kids, table, budget).run()) {
        auto [rt, rl] = reindex(t, layout, order);
        consider(rt, rl);
      }
    });
  });

  for (auto& [key, ds] : found) result.orders.push_back({key.first, std::move(ds)});
  return result;
}

}  // namespace odg
