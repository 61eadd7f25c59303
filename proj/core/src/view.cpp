#include "odg/view.hpp"

#include <algorithm>

namespace odg {

namespace {
const std::vector<DomainRef> kNoDomains;
}

StructureView::StructureView(const DependencyStructure& ds, const Lexicon& lex)
    : ds_(&ds), lex_(&lex), n_(ds.tree.words.size()) {
  const auto& tree = ds.tree;
  entries_.assign(n_, nullptr);
  for (std::size_t i = 0; i < n_; ++i) {
    entries_[i] = lex.entry(tree.words[i].form, tree.words[i].entry);
  }
  root_entry_ = lex.root_entry(tree.root_entry);

  // Heads: count incoming edges, the implicit root edge included.
  std::vector<int> indegree(n_, 0);
  heads_.assign(n_, std::nullopt);
  dtypes_.assign(n_, std::string_view{});
  for (const auto& e : tree.edges) {
    if (!contains_word(e.dependent) || !contains_word(e.head)) continue;
    ++indegree[e.dependent];
    heads_[e.dependent] = e.head;
    dtypes_[e.dependent] = e.dtype;
  }
  if (contains_word(tree.root)) {
    ++indegree[tree.root];
    heads_[tree.root] = kRoot;
    dtypes_[tree.root] = root_entry_ && !root_entry_->valency.empty()
                             ? std::string_view(root_entry_->valency.front().dtype)
                             : std::string_view{};
  }
  tree_ok_ = n_ > 0 && contains_word(tree.root);
  for (std::size_t i = 0; i < n_; ++i) {
    if (indegree[i] != 1) {
      heads_[i] = std::nullopt;
      tree_ok_ = false;
    }
  }
  if (tree_ok_) {
    for (std::size_t i = 0; i < n_ && tree_ok_; ++i) {
      WordIndex w = static_cast<WordIndex>(i);
      std::size_t steps = 0;
      while (w != kRoot && steps <= n_) {
        w = *heads_[w];
        ++steps;
      }
      if (w != kRoot) tree_ok_ = false;
    }
  }

  // Domain ownership from assoc.
  for (const auto& d : ds.domains.domains) {
    DomainInfo info;
    info.domain = &d;
    infos_.push_back(info);
  }
  for (const auto& [w, seq] : ds.domains.assoc) {
    const LexicalEntry* e = entry(w);
    for (const auto& ref : seq) {
      for (auto& info : infos_) {
        if (info.domain->id != ref.id || info.owned) continue;
        info.owner = w;
        info.owned = true;
        if (e) info.slot = e->domains.slot_index(ref.slot);
      }
    }
  }

  own_.assign(n_, nullptr);
  insertion_.assign(n_, nullptr);
  for (std::size_t i = 0; i < n_; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    own_[i] = unique_containing(w, w);
    if (auto p = positional(w)) insertion_[i] = unique_containing(*p, w);
  }
}

const LexicalEntry* StructureView::entry(WordIndex w) const {
  if (w == kRoot) return root_entry_;
  return contains_word(w) ? entries_[w] : nullptr;
}

std::optional<WordIndex> StructureView::head(WordIndex w) const {
  return contains_word(w) ? heads_[w] : std::nullopt;
}

std::optional<std::string_view> StructureView::incoming_dtype(WordIndex w) const {
  if (!contains_word(w) || !heads_[w]) return std::nullopt;
  return dtypes_[w];
}

bool StructureView::dominates(WordIndex ancestor, WordIndex w) const {
  if (!tree_ok_ || !contains_word(w)) return false;
  if (ancestor == kRoot) return true;
  for (WordIndex cur = *heads_[w]; cur != kRoot; cur = *heads_[cur]) {
    if (cur == ancestor) return true;
  }
  return false;
}

std::optional<std::vector<std::string_view>> StructureView::path_dtypes(
    WordIndex top, WordIndex bottom) const {
  if (!tree_ok_) return std::nullopt;
  if (top == bottom) return std::vector<std::string_view>{};
  if (!dominates(top, bottom)) return std::nullopt;
  std::vector<std::string_view> out;
  for (WordIndex cur = bottom; cur != top; cur = *heads_[cur]) out.push_back(dtypes_[cur]);
  std::reverse(out.begin(), out.end());
  return out;
}

const OrderDomain* StructureView::domain(std::string_view id) const {
  return ds_->domains.find(id);
}

const StructureView::DomainInfo* StructureView::info(std::string_view id) const {
  for (const auto& i : infos_) {
    if (i.domain->id == id) return &i;
  }
  return nullptr;
}

const std::vector<DomainRef>& StructureView::assoc(WordIndex w) const {
  auto it = ds_->domains.assoc.find(w);
  return it == ds_->domains.assoc.end() ? kNoDomains : it->second;
}

const OrderDomain* StructureView::realized(WordIndex w, std::size_t slot) const {
  const LexicalEntry* e = entry(w);
  if (!e || slot >= e->domains.slots.size()) return nullptr;
  for (const auto& ref : assoc(w)) {
    if (ref.slot == e->domains.slots[slot]) return domain(ref.id);
  }
  return nullptr;
}

const OrderDomain* StructureView::unique_containing(WordIndex owner, WordIndex w) const {
  const OrderDomain* found = nullptr;
  for (const auto& ref : assoc(owner)) {
    const OrderDomain* d = domain(ref.id);
    if (!d || !d->members.contains(w)) continue;
    if (found) return nullptr;
    found = d;
  }
  return found;
}

const OrderDomain* StructureView::own_domain(WordIndex w) const {
  return contains_word(w) ? own_[w] : nullptr;
}

std::optional<WordIndex> StructureView::positional(WordIndex w) const {
  if (!contains_word(w)) return std::nullopt;
  if (w == ds_->tree.root) return kRoot;
  auto it = ds_->positional.find(w);
  if (it == ds_->positional.end()) return std::nullopt;
  return it->second;
}

const OrderDomain* StructureView::insertion_domain(WordIndex w) const {
  return contains_word(w) ? insertion_[w] : nullptr;
}

std::vector<StructureView::Member> StructureView::immediate_members(
    const OrderDomain& d) const {
  std::vector<Member> out;
  for (std::size_t i = 0; i < n_; ++i) {
    const WordIndex w = static_cast<WordIndex>(i);
    if (own_[i] == &d) out.push_back({w, w, w, nullptr});
    if (insertion_[i] != &d) continue;
    for (const auto& ref : assoc(w)) {
      const OrderDomain* sub = domain(ref.id);
      if (!sub || sub == &d || sub->members.empty()) continue;
      out.push_back({w, *sub->members.begin(), *sub->members.rbegin(), sub});
    }
  }
  std::sort(out.begin(), out.end(), [](const Member& a, const Member& b) {
    return a.first != b.first ? a.first < b.first : a.last < b.last;
  });
  return out;
}

}  // namespace odg
