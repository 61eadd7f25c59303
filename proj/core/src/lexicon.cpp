#include "odg/lexicon.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "odg/error.hpp"

namespace odg {

bool Inventory::has_value(std::string_view attr, std::string_view value) const {
  auto it = attributes.find(attr);
  return it != attributes.end() && it->second.contains(value);
}

std::optional<std::size_t> DomainTemplate::slot_index(std::string_view name) const {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (slots[i] == name) return i;
  }
  return std::nullopt;
}

const ValencySlot* LexicalEntry::slot_for(std::string_view dtype) const {
  for (const auto& slot : valency) {
    if (slot.dtype == dtype) return &slot;
  }
  return nullptr;
}

const LexicalEntry* Lexicon::entry(std::string_view form, std::size_t ordinal) const {
  auto it = entries.find(form);
  if (it == entries.end() || ordinal >= it->second.size()) return nullptr;
  return &it->second[ordinal];
}

const LexicalEntry* Lexicon::root_entry(std::size_t ordinal) const {
  return ordinal < roots.size() ? &roots[ordinal] : nullptr;
}

std::size_t Lexicon::entry_count() const {
  std::size_t n = 0;
  for (const auto& [form, list] : entries) n += list.size();
  return n;
}

std::vector<const LexicalEntry*> entries_for(std::string_view form,
                                             const Lexicon& lex) {
  std::vector<const LexicalEntry*> out;
  auto it = lex.entries.find(form);
  if (it == lex.entries.end()) return out;
  for (const auto& e : it->second) out.push_back(&e);
  return out;
}

Lexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_lexicon(buf.str());
}

namespace {

[[noreturn]] void fail(LexiconError::Kind kind, const std::string& what) {
  throw LexiconError(kind, 0, 0, what);
}

void check_features(const FeatureSet& fs, const Inventory& inv,
                    const std::string& where) {
  for (const auto& [attr, value] : fs) {
    if (!inv.attributes.contains(attr))
      fail(LexiconError::Kind::UnknownSymbol, where + ": unknown attribute '" + attr + "'");
    if (!inv.has_value(attr, value))
      fail(LexiconError::Kind::UnknownSymbol,
           where + ": unknown value '" + value + "' for attribute '" + attr + "'");
  }
}

void check_entry(const LexicalEntry& e, const Inventory& inv, bool is_root) {
  const std::string where = "entry \"" + e.form + "\"";
  if (!is_root && !inv.has_class(e.word_class))
    fail(LexiconError::Kind::UnknownSymbol, where + ": unknown class '" + e.word_class + "'");
  check_features(e.features, inv, where);

  SymbolSet seen;
  for (const auto& slot : e.valency) {
    if (!inv.has_dtype(slot.dtype))
      fail(LexiconError::Kind::UnknownSymbol, where + ": unknown dtype '" + slot.dtype + "'");
    if (!seen.insert(slot.dtype).second)
      fail(LexiconError::Kind::DuplicateSlot, where + ": duplicate slot '" + slot.dtype + "'");
    if (slot.word_class && !inv.has_class(*slot.word_class))
      fail(LexiconError::Kind::UnknownSymbol, where + ": unknown class '" + *slot.word_class + "'");
    check_features(slot.features, inv, where);
    for (const auto& d : slot.extraction) {
      if (!inv.has_dtype(d))
        fail(LexiconError::Kind::UnknownSymbol, where + ": unknown dtype '" + d + "' in extraction set");
    }
  }

  const auto& t = e.domains;
  if (t.slots.empty()) fail(LexiconError::Kind::Invalid, where + ": empty domain template");
  if (t.self_slot >= t.slots.size())
    fail(LexiconError::Kind::Invalid, where + ": self slot out of range");
  for (std::size_t i = 0; i < t.slots.size(); ++i) {
    if (t.slot_index(t.slots[i]) != i)
      fail(LexiconError::Kind::Invalid, where + ": duplicate domain slot '" + t.slots[i] + "'");
  }
  for (const auto& c : t.cardinalities) {
    if (c.slot >= t.slots.size())
      fail(LexiconError::Kind::Invalid, where + ": cardinality slot out of range");
    // (0, unbounded) is the absence of a constraint; the file syntax has no form for it.
    const bool representable = (c.min == 0 || c.min == 1) &&
                               (!c.max || *c.max == 1) && !(c.min == 0 && !c.max);
    if (!representable)
      fail(LexiconError::Kind::Invalid, where + ": unrepresentable cardinality");
  }
  for (const auto& r : t.requirements) {
    if (r.slot >= t.slots.size())
      fail(LexiconError::Kind::Invalid, where + ": feature requirement slot out of range");
    check_features(r.required, inv, where);
  }
  for (const auto& p : e.predicates) {
    if (p.scope && *p.scope >= t.slots.size())
      fail(LexiconError::Kind::Invalid, where + ": predicate scope out of range");
    if (p.kind == PrecedencePredicate::Kind::SelfVsAll) {
      if (!p.left.empty() || !p.right.empty())
        fail(LexiconError::Kind::Invalid, where + ": self predicate carries labels");
      if (p.scope && *p.scope != t.self_slot)
        fail(LexiconError::Kind::Invalid, where + ": self predicate must be scoped to the self slot");
    } else {
      if (p.left.empty() || p.right.empty())
        fail(LexiconError::Kind::Invalid, where + ": labeled predicate needs non-empty label sets");
      for (const auto* labels : {&p.left, &p.right}) {
        for (const auto& d : *labels) {
          if (!inv.has_dtype(d))
            fail(LexiconError::Kind::UnknownSymbol, where + ": unknown dtype '" + d + "' in predicate");
        }
      }
    }
  }
  if (is_root) {
    if (e.valency.size() != 1 || !e.valency.front().required())
      fail(LexiconError::Kind::Invalid, "root entry needs exactly one required slot");
    if (t.slots.size() != 1 || t.slots.front() != kRootSlot || !t.cardinalities.empty() ||
        !t.requirements.empty() || !e.predicates.empty())
      fail(LexiconError::Kind::Invalid, "root entry carries a fixed single-domain template");
  }
}

void write_features(std::ostream& out, const FeatureSet& fs) {
  bool first = true;
  for (const auto& [attr, value] : fs) {
    if (!first) out << ' ';
    out << attr << '=' << value;
    first = false;
  }
}

void write_labels(std::ostream& out, const SymbolSet& labels) {
  out << '<';
  bool first = true;
  for (const auto& l : labels) {
    if (!first) out << ',';
    out << l;
    first = false;
  }
  out << '>';
}

void write_slot(std::ostream& out, const ValencySlot& slot) {
  out << "  slot " << slot.dtype << ':';
  if (slot.word_class) out << " class=" << *slot.word_class;
  if (!slot.features.empty()) {
    out << " feat ";
    write_features(out, slot.features);
  }
  out << (slot.required() ? " required" : " optional");
  out << " extract {";
  bool first = true;
  for (const auto& d : slot.extraction) {
    if (!first) out << ',';
    out << d;
    first = false;
  }
  out << "};\n";
}

void write_symbols(std::ostream& out, const SymbolSet& set) {
  for (const auto& s : set) out << ' ' << s;
}

}  // namespace

void check_lexicon(const Lexicon& lex) {
  for (const auto& r : lex.roots) {
    if (r.form != kRootForm) fail(LexiconError::Kind::Invalid, "root entry with wrong form");
    check_entry(r, lex.inventory, true);
  }
  for (const auto& [form, list] : lex.entries) {
    for (const auto& e : list) {
      if (e.form != form)
        fail(LexiconError::Kind::Invalid, "entry \"" + e.form + "\" filed under \"" + form + "\"");
      check_entry(e, lex.inventory, false);
    }
  }
}

std::string render_lexicon(const Lexicon& lex) {
  std::ostringstream out;
  out << "dtypes:";
  write_symbols(out, lex.inventory.dtypes);
  out << "\nclasses:";
  write_symbols(out, lex.inventory.classes);
  out << '\n';
  for (const auto& [attr, values] : lex.inventory.attributes) {
    out << "attr " << attr << ':';
    write_symbols(out, values);
    out << '\n';
  }
  for (const auto& r : lex.roots) {
    out << "\nroot {\n";
    for (const auto& slot : r.valency) write_slot(out, slot);
    out << "}\n";
  }
  for (const auto& [form, list] : lex.entries) {
    for (const auto& e : list) {
      const auto& t = e.domains;
      out << "\nentry \"" << e.form << "\" class=" << e.word_class << " {\n";
      if (!e.features.empty()) {
        out << "  feat ";
        write_features(out, e.features);
        out << ";\n";
      }
      for (const auto& slot : e.valency) write_slot(out, slot);
      out << "  domains [";
      for (std::size_t i = 0; i < t.slots.size(); ++i) out << (i ? " " : "") << t.slots[i];
      out << "] self=" << t.slots[t.self_slot] << ";\n";
      for (const auto& c : t.cardinalities) {
        out << "  card " << t.slots[c.slot];
        if (c.min == 1 && c.max) out << " = 1;\n";
        else if (c.max) out << " <= 1;\n";
        else out << " >= 1;\n";
      }
      for (const auto& r : t.requirements) {
        out << "  feat " << t.slots[r.slot] << ' ';
        write_features(out, r.required);
        out << ";\n";
      }
      for (const auto& p : e.predicates) {
        out << "  order ";
        if (p.kind == PrecedencePredicate::Kind::SelfVsAll) {
          out << "self " << (p.direction == Direction::Precedes ? '<' : '>') << " *";
        } else {
          write_labels(out, p.left);
          out << (p.direction == Direction::Precedes ? " before " : " after ");
          write_labels(out, p.right);
        }
        if (p.scope) out << " in " << t.slots[*p.scope];
        out << ";\n";
      }
      out << "}\n";
    }
  }
  return out.str();
}

std::string summarize(const Lexicon& lex) {
  std::ostringstream out;
  out << "dtypes (" << lex.inventory.dtypes.size() << "):";
  write_symbols(out, lex.inventory.dtypes);
  out << "\nclasses (" << lex.inventory.classes.size() << "):";
  write_symbols(out, lex.inventory.classes);
  out << "\nattributes (" << lex.inventory.attributes.size() << "):";
  for (const auto& [attr, values] : lex.inventory.attributes) {
    out << ' ' << attr << '{';
    bool first = true;
    for (const auto& v : values) {
      out << (first ? "" : ",") << v;
      first = false;
    }
    out << '}';
  }
  out << "\nroot entries: " << lex.roots.size();
  out << "\nforms: " << lex.entries.size() << ", entries: " << lex.entry_count() << '\n';
  for (const auto& [form, list] : lex.entries) {
    out << "  " << form << ':';
    for (const auto& e : list) out << ' ' << e.word_class;
    out << '\n';
  }
  return out.str();
}

}  // namespace odg
