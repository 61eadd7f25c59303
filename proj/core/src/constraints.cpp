#include "odg/constraints.hpp"

#include <sstream>

namespace odg {

namespace {

std::string label(WordIndex w, const StructureView& view) {
  if (w == kRoot) return "ROOT";
  std::string out = view.contains_word(w) ? view.structure().tree.words[w].form : "?";
  return out + "#" + std::to_string(w);
}

std::string slot_name(const LexicalEntry& e, std::size_t slot) {
  return slot < e.domains.slots.size() ? e.domains.slots[slot] : "#" + std::to_string(slot);
}

// A member matches a label set when its head word is a transitive dependent
// of the introducer whose incoming edge carries one of the labels.
bool matches(const StructureView::Member& m, const SymbolSet& labels,
             WordIndex introducer, const StructureView& view) {
  if (m.head == introducer || !view.dominates(introducer, m.head)) return false;
  auto dtype = view.incoming_dtype(m.head);
  return dtype && labels.contains(*dtype);
}

bool member_precedes(const StructureView::Member& a, const StructureView::Member& b) {
  return a.last < b.first;
}

std::string describe(const StructureView::Member& m, const StructureView& view) {
  std::string out = label(m.head, view);
  if (m.domain) out = "domain " + m.domain->id + " of " + out;
  return out;
}

std::vector<std::string> ids(const StructureView::Member& a) {
  return a.domain ? std::vector<std::string>{a.domain->id} : std::vector<std::string>{};
}

}  // namespace

ValidationReport check_precedence(const PrecedencePredicate& pred, WordIndex introducer,
                                  const StructureView& view) {
  ValidationReport report;
  const LexicalEntry* entry = view.entry(introducer);
  if (!entry) {
    report.add("lexical.entry", {introducer}, {}, "introducer has no lexical entry");
    return report;
  }
  const auto& inv = view.lexicon().inventory;
  for (const auto* labels : {&pred.left, &pred.right}) {
    for (const auto& d : *labels) {
      if (!inv.has_dtype(d))
        report.add("inventory", {introducer}, {}, "unknown dependency type '" + d + "' in predicate");
    }
  }
  if (!report.ok()) return report;

  const bool precedes = pred.direction == Direction::Precedes;
  if (pred.kind == PrecedencePredicate::Kind::SelfVsAll) {
    const OrderDomain* scope = view.own_domain(introducer);
    if (!scope) return report;
    for (const auto& m : view.immediate_members(*scope)) {
      if (m.head == introducer && !m.domain) continue;
      const bool ok = precedes ? introducer < m.first : introducer > m.last;
      if (!ok) {
        report.add("order", {introducer, m.head}, {scope->id},
                   label(introducer, view) + (precedes ? " must precede " : " must follow ") +
                       describe(m, view) + " in domain " + scope->id);
      }
    }
    return report;
  }

  for (std::size_t slot = 0; slot < entry->domains.slots.size(); ++slot) {
    if (pred.scope && *pred.scope != slot) continue;
    const OrderDomain* d = view.realized(introducer, slot);
    if (!d) continue;
    const auto members = view.immediate_members(*d);
    for (const auto& x : members) {
      if (!matches(x, pred.left, introducer, view)) continue;
      for (const auto& y : members) {
        if (x.head == y.head || !matches(y, pred.right, introducer, view)) continue;
        const bool ok = precedes ? member_precedes(x, y) : member_precedes(y, x);
        if (!ok) {
          auto doms = ids(x);
          for (auto& s : ids(y)) doms.push_back(s);
          doms.push_back(d->id);
          report.add("order", {introducer, x.head, y.head}, std::move(doms),
                     describe(x, view) + (precedes ? " must precede " : " must follow ") +
                         describe(y, view) + " in domain " + d->id + " of " +
                         label(introducer, view));
        }
      }
    }
  }
  return report;
}

ValidationReport check_cardinality(const CardinalityConstraint& c, WordIndex introducer,
                                   const StructureView& view) {
  ValidationReport report;
  const LexicalEntry* entry = view.entry(introducer);
  if (!entry) {
    report.add("lexical.entry", {introducer}, {}, "introducer has no lexical entry");
    return report;
  }
  if (c.slot >= entry->domains.slots.size()) {
    report.add("card.slot", {introducer}, {},
               "cardinality slot #" + std::to_string(c.slot) + " out of range for " +
                   label(introducer, view));
    return report;
  }
  const OrderDomain* d = view.realized(introducer, c.slot);
  const std::size_t count = d ? view.immediate_members(*d).size() : 0;
  if (count < c.min || (c.max && count > *c.max)) {
    std::ostringstream msg;
    msg << "slot " << slot_name(*entry, c.slot) << " of " << label(introducer, view)
        << " has " << count << " immediate members, expected ";
    if (c.min == 1 && c.max) msg << "exactly one";
    else if (c.max) msg << "at most one";
    else msg << "at least one";
    report.add("card", {introducer}, d ? std::vector<std::string>{d->id} : std::vector<std::string>{},
               msg.str());
  }
  return report;
}

ValidationReport check_domain_features(const DomainFeatureRequirement& r, WordIndex introducer,
                                       const StructureView& view) {
  ValidationReport report;
  const LexicalEntry* entry = view.entry(introducer);
  if (!entry || r.required.empty()) return report;
  const OrderDomain* d = view.realized(introducer, r.slot);
  if (!d) return report;
  const auto& features = view.structure().features;
  for (const auto& m : view.immediate_members(*d)) {
    if (m.head == introducer) continue;
    auto fit = features.find(m.head);
    for (const auto& [attr, value] : r.required) {
      bool ok = false;
      if (fit != features.end()) {
        auto a = fit->second.find(attr);
        ok = a != fit->second.end() && a->second == value;
      }
      if (!ok) {
        report.add("feat", {introducer, m.head}, {d->id},
                   describe(m, view) + " lacks " + attr + "=" + value + " required in slot " +
                       slot_name(*entry, r.slot) + " of " + label(introducer, view));
      }
    }
  }
  return report;
}

ValidationReport check_extraction(const ValencySlot& slot, WordIndex dependent,
                                  const StructureView& view) {
  ValidationReport report;
  const auto head = view.head(dependent);
  const auto pos = view.positional(dependent);
  if (!head || !pos) {
    report.add("positional", {dependent}, {}, "dependent has no head or positional head");
    return report;
  }
  const auto path = view.path_dtypes(*pos, *head);
  if (!path) {
    report.add("positional", {dependent, *pos}, {},
               "positional head " + word_label(*pos) + " of " + label(dependent, view) +
                   " is not a transitive head");
    return report;
  }
  for (auto d : *path) {
    if (!slot.extraction.contains(d)) {
      report.add("extraction", {dependent, *head, *pos}, {},
                 "path from positional head " + word_label(*pos) + " to direct head " +
                     word_label(*head) + " crosses '" + std::string(d) +
                     "', not in the extraction set of slot " + slot.dtype);
    }
  }
  return report;
}

ValidationReport check_lexical_constraints(WordIndex w, const StructureView& view) {
  ValidationReport report;
  const LexicalEntry* e = view.entry(w);
  if (!e) return report;
  for (const auto& c : e->domains.cardinalities) report.merge(check_cardinality(c, w, view));
  for (const auto& r : e->domains.requirements) report.merge(check_domain_features(r, w, view));
  for (const auto& p : e->predicates) report.merge(check_precedence(p, w, view));
  return report;
}

}  // namespace odg
