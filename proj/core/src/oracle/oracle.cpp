#include "odg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>

#include "odg/error.hpp"
#include "odg/serialize.hpp"
#include "odg/validate.hpp"

namespace odg {

namespace {

// Mixed-radix counter over `sizes`; returns false after the last tuple.
bool advance(std::vector<std::size_t>& idx, const std::vector<std::size_t>& sizes) {
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (++idx[k] < sizes[k]) return true;
    idx[k] = 0;
  }
  return false;
}

bool any_zero(const std::vector<std::size_t>& sizes) {
  return std::find(sizes.begin(), sizes.end(), 0) != sizes.end();
}

struct Candidate {
  WordIndex head;
  std::string dtype;
};

// Words with their resolved entries, head and dtype arrays (root word has
// head kRoot and the root slot's dtype).
struct Frame {
  std::vector<const LexicalEntry*> entries;
  const LexicalEntry* root_entry = nullptr;
  std::vector<WordIndex> head;
  std::vector<std::string> dtype;

  const LexicalEntry& entry(WordIndex w) const { return w == kRoot ? *root_entry : *entries[w]; }
};

// True if every edge on the path from `top` down to head(w) is in `allowed`.
bool path_within(const Frame& f, WordIndex w, WordIndex top, const SymbolSet& allowed) {
  for (WordIndex x = f.head[w]; x != top; x = f.head[x]) {
    if (x == kRoot) return false;
    if (!allowed.contains(f.dtype[x])) return false;
  }
  return true;
}

// Strict ancestors of w, nearest first, ending with kRoot.
std::vector<WordIndex> ancestors(const Frame& f, WordIndex w) {
  std::vector<WordIndex> out;
  for (WordIndex x = f.head[w]; x != kRoot; x = f.head[x]) out.push_back(x);
  out.push_back(kRoot);
  return out;
}

bool is_interval_mask(std::uint64_t m) {
  m >>= std::countr_zero(m);
  return (m & (m + 1)) == 0;
}

// Nonzero masks are intervals and any two are nested or disjoint.
bool laminar_intervals(const std::vector<std::uint64_t>& masks) {
  for (std::size_t i = 0; i < masks.size(); ++i) {
    const std::uint64_t a = masks[i];
    if (!a) continue;
    if (!is_interval_mask(a)) return false;
    for (std::size_t j = i + 1; j < masks.size(); ++j) {
      const std::uint64_t b = masks[j];
      const std::uint64_t both = a & b;
      if (b && both && both != a && both != b) return false;
    }
  }
  return true;
}

// All structures (every positional map, every slot choice) over a fixed
// tree in a fixed order; `emit` receives the survivors of validation.
template <typename Emit>
void realize(const DependencyStructure& base, const Frame& f, const Lexicon& lex,
             OracleStats* stats, Emit&& emit) {
  const std::size_t n = f.entries.size();
  std::vector<std::vector<WordIndex>> pos_opts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    if (w == base.tree.root) {
      pos_opts[i] = {kRoot};
      continue;
    }
    const ValencySlot* slot = f.entry(f.head[i]).slot_for(f.dtype[i]);
    for (WordIndex a : ancestors(f, w)) {
      if (slot && path_within(f, w, a, slot->extraction)) pos_opts[i].push_back(a);
    }
  }
  std::vector<std::size_t> pos_sizes;
  for (const auto& o : pos_opts) pos_sizes.push_back(o.size());
  if (any_zero(pos_sizes)) return;

  std::vector<std::size_t> pidx(n, 0);
  do {
    std::vector<WordIndex> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[i] = pos_opts[i][pidx[i]];
    std::vector<std::size_t> slot_sizes(n);
    for (std::size_t i = 0; i < n; ++i) slot_sizes[i] = f.entry(pos[i]).domains.slots.size();
    if (any_zero(slot_sizes)) continue;

    // Cell (o, s) lives at (o + 1) * width + s, with owner kRoot at row 0.
    std::size_t width = 1;
    for (std::size_t i = 0; i < n; ++i) width = std::max(width, f.entries[i]->domains.slots.size());
    width = std::max(width, f.root_entry->domains.slots.size());
    std::vector<std::uint64_t> masks((n + 1) * width);

    std::vector<std::size_t> sidx(n, 0);
    do {
      if (stats) ++stats->candidates;
      // Domain (o, s) holds o itself when s is o's self slot, plus every
      // word whose positional chain passes through a word placed in (o, s).
      std::fill(masks.begin(), masks.end(), 0);
      const auto cell = [&](WordIndex o, std::size_t s) -> std::uint64_t& {
        return masks[static_cast<std::size_t>(o + 1) * width + s];
      };
      for (std::size_t i = 0; i < n; ++i) {
        const WordIndex w = static_cast<WordIndex>(i);
        cell(w, f.entries[i]->domains.self_slot) |= std::uint64_t{1} << i;
        for (WordIndex x = w; x != kRoot; x = pos[x]) cell(pos[x], sidx[x]) |= std::uint64_t{1} << i;
      }
      // Contiguity and nesting on bitmasks first; both are part of the
      // domain-layer check below, so this only skips doomed candidates.
      if (!laminar_intervals(masks)) continue;
      std::map<std::pair<WordIndex, std::size_t>, std::set<WordIndex>> cells;
      for (std::size_t c = 0; c < masks.size(); ++c) {
        if (!masks[c]) continue;
        auto& members = cells[{static_cast<WordIndex>(c / width) - 1, c % width}];
        for (std::size_t i = 0; i < n; ++i)
          if (masks[c] >> i & 1) members.insert(static_cast<WordIndex>(i));
      }
      DependencyStructure ds = base;
      for (const auto& [key, members] : cells) {
        const auto [owner, s] = key;
        std::string slot_name = f.entry(owner).domains.slots[s];
        std::string id = word_label(owner) + "." + slot_name;
        ds.domains.domains.push_back({id, members});
        ds.domains.assoc[owner].push_back({slot_name, id});
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (static_cast<WordIndex>(i) != base.tree.root) ds.positional[static_cast<WordIndex>(i)] = pos[i];
      }
      // The domain layer alone rejects most candidates and is cheap to check.
      if (!validate_domain_structure(ds.domains, n).ok()) continue;
      if (is_valid(ds, lex)) emit(std::move(ds));
    } while (advance(sidx, slot_sizes));
  } while (advance(pidx, pos_sizes));
}

DependencyStructure tree_base(const std::vector<std::string>& forms, const std::vector<std::size_t>& ordinals,
                              const std::vector<const LexicalEntry*>& entries) {
  DependencyStructure ds;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    ds.tree.words.push_back({w, forms[i], ordinals[i]});
    ds.tree.classes[w] = entries[i]->word_class;
    ds.features[w] = entries[i]->features;
  }
  return ds;
}

}  // namespace

std::vector<DependencyStructure> oracle_parse(std::span<const std::string> tokens, const Lexicon& lex,
                                              const OracleConfig& config, OracleStats* stats) {
  const std::size_t n = tokens.size();
  // Domains are held as 64-bit masks while enumerating.
  const std::size_t cap = std::min<std::size_t>(config.max_tokens, 64);
  if (n > cap) throw TokenLimitExceeded(n, cap);
  if (n == 0) throw Error("empty input");
  std::vector<std::vector<const LexicalEntry*>> readings(n);
  for (std::size_t i = 0; i < n; ++i) {
    readings[i] = entries_for(tokens[i], lex);
    if (readings[i].empty()) throw UnknownToken(tokens[i]);
  }
  const std::vector<std::string> forms(tokens.begin(), tokens.end());
  std::map<std::string, DependencyStructure> found;

  std::vector<std::size_t> rsizes;
  for (const auto& r : readings) rsizes.push_back(r.size());
  std::vector<std::size_t> ridx(n, 0);
  do {
    std::vector<const LexicalEntry*> entries(n);
    for (std::size_t i = 0; i < n; ++i) entries[i] = readings[i][ridx[i]];
    const DependencyStructure base0 = tree_base(forms, ridx, entries);

    for (std::size_t r = 0; r < lex.roots.size(); ++r) {
      const LexicalEntry& root_entry = lex.roots[r];
      const std::string& root_dtype = root_entry.valency.front().dtype;
      // Per word: every (head, dtype) the head's valency admits, where
      // kRoot as head marks the word as the root.
      std::vector<std::vector<Candidate>> cands(n);
      for (std::size_t d = 0; d < n; ++d) {
        if (edge_licensed(root_entry, root_dtype, *entries[d])) cands[d].push_back({kRoot, root_dtype});
        for (std::size_t h = 0; h < n; ++h) {
          if (h == d) continue;
          for (const auto& slot : entries[h]->valency) {
            if (edge_licensed(*entries[h], slot.dtype, *entries[d]))
              cands[d].push_back({static_cast<WordIndex>(h), slot.dtype});
          }
        }
      }
      std::vector<std::size_t> csizes;
      for (const auto& c : cands) csizes.push_back(c.size());
      if (any_zero(csizes)) continue;

      std::vector<std::size_t> cidx(n, 0);
      do {
        const auto roots = std::count_if(cidx.begin(), cidx.end(), [&, i = std::size_t{0}](std::size_t k) mutable {
          return cands[i++][k].head == kRoot;
        });
        if (roots != 1) continue;
        DependencyStructure base = base0;
        base.tree.root_entry = r;
        Frame f{entries, &root_entry, std::vector<WordIndex>(n), std::vector<std::string>(n)};
        for (std::size_t d = 0; d < n; ++d) {
          const Candidate& c = cands[d][cidx[d]];
          f.head[d] = c.head;
          f.dtype[d] = c.dtype;
          if (c.head == kRoot)
            base.tree.root = static_cast<WordIndex>(d);
          else
            base.tree.edges.push_back({c.head, static_cast<WordIndex>(d), c.dtype});
        }
        if (!validate_dependency_layer(base.tree, base.features, lex).ok()) continue;
        if (stats) ++stats->trees;
        realize(base, f, lex, stats, [&](DependencyStructure ds) {
          std::string key = canonical_form(ds);
          found.emplace(std::move(key), std::move(ds));
        });
      } while (advance(cidx, csizes));
    }
  } while (advance(ridx, rsizes));

  std::vector<DependencyStructure> out;
  for (auto& [key, ds] : found) out.push_back(std::move(ds));
  return out;
}

std::vector<std::pair<std::string, DependencyStructure>> oracle_linearizations(
    const DependencyTree& tree, const Lexicon& lex, const OracleConfig& config, OracleStats* stats) {
  const std::size_t n = tree.words.size();
  // Domains are held as 64-bit masks while enumerating.
  const std::size_t cap = std::min<std::size_t>(config.max_tokens, 64);
  if (n > cap) throw TokenLimitExceeded(n, cap);
  const ValidationReport tree_report = validate_tree(tree, lex.inventory);
  if (!tree_report.ok()) throw Error("invalid tree:\n" + tree_report.render());
  const LexicalEntry* root_entry = lex.root_entry(tree.root_entry);
  if (!root_entry) throw Error("unbound root entry");

  std::map<std::pair<std::string, std::string>, DependencyStructure> found;
  std::vector<WordIndex> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // perm[i] is the original word placed at position i.
    std::vector<WordIndex> at(n);
    for (std::size_t i = 0; i < n; ++i) at[perm[i]] = static_cast<WordIndex>(i);
    std::vector<std::string> forms(n);
    std::vector<std::size_t> ordinals(n);
    std::vector<const LexicalEntry*> entries(n);
    for (std::size_t i = 0; i < n; ++i) {
      const WordToken& tok = tree.words[perm[i]];
      forms[i] = tok.form;
      ordinals[i] = tok.entry;
      entries[i] = lex.entry(tok.form, tok.entry);
      if (!entries[i]) throw Error("unbound token '" + tok.form + "'");
    }
    DependencyStructure base = tree_base(forms, ordinals, entries);
    base.tree.root_entry = tree.root_entry;
    base.tree.root = at[tree.root];
    Frame f{entries, root_entry, std::vector<WordIndex>(n, kRoot),
            std::vector<std::string>(n, root_entry->valency.front().dtype)};
    for (const auto& e : tree.edges) {
      const WordIndex d = at[e.dependent];
      f.head[d] = at[e.head];
      f.dtype[d] = e.dtype;
      base.tree.edges.push_back({at[e.head], d, e.dtype});
    }
    std::sort(base.tree.edges.begin(), base.tree.edges.end(),
              [](const DependencyEdge& a, const DependencyEdge& b) { return a.dependent < b.dependent; });
    if (stats) ++stats->trees;
    realize(base, f, lex, stats, [&](DependencyStructure ds) {
      std::string surface = surface_string(ds.tree);
      std::string key = canonical_form(ds);
      found.emplace(std::make_pair(std::move(surface), std::move(key)), std::move(ds));
    });
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::pair<std::string, DependencyStructure>> out;
  for (auto& [key, ds] : found) out.emplace_back(key.first, std::move(ds));
  return out;
}

std::set<std::string> oracle_orders(const DependencyTree& tree, const Lexicon& lex, const OracleConfig& config) {
  std::set<std::string> out;
  for (const auto& [surface, ds] : oracle_linearizations(tree, lex, config)) out.insert(surface);
  return out;
}

}  // namespace odg
