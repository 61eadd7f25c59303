#include "odg/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "odg/error.hpp"

namespace odg {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <typename Int>
Int parse_int(std::string_view s, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw FormatError(line, std::string("expected ") + what + ", found '" + std::string(s) + "'");
  return value;
}

WordIndex parse_word(std::string_view s, std::size_t line) {
  if (s == "ROOT") return kRoot;
  const WordIndex w = parse_int<WordIndex>(s, line, "word index");
  if (w < 0) throw FormatError(line, "negative word index");
  return w;
}

std::string_view strip_colon(std::string_view s, std::size_t line) {
  if (s.size() < 2 || s.back() != ':') throw FormatError(line, "expected '<name>:'");
  return s.substr(0, s.size() - 1);
}

void write_tree(std::ostream& out, const DependencyTree& tree, const FeatureMap* features) {
  for (const auto& t : tree.words) {
    auto cls = tree.classes.find(t.index);
    out << "token " << t.index << ' ' << t.form << ' '
        << (cls == tree.classes.end() ? std::string("-") : cls->second) << ' ' << t.entry;
    if (features) {
      if (auto f = features->find(t.index); f != features->end()) {
        for (const auto& [attr, value] : f->second) out << ' ' << attr << '=' << value;
      }
    }
    out << '\n';
  }
  out << "root " << tree.root << ' ' << tree.root_entry << '\n';
  for (const auto& e : tree.edges) out << "edge " << e.head << ' ' << e.dtype << ' ' << e.dependent << '\n';
}

}  // namespace

std::string render_text(const DependencyStructure& ds) {
  std::ostringstream out;
  write_tree(out, ds.tree, &ds.features);
  for (const auto& d : ds.domains.domains) {
    out << "domain " << d.id << ':';
    for (WordIndex w : d.members) out << ' ' << w;
    out << '\n';
  }
  for (const auto& [w, seq] : ds.domains.assoc) {
    out << "assoc " << word_label(w) << ':';
    for (const auto& ref : seq) out << ' ' << ref.slot << '=' << ref.id;
    out << '\n';
  }
  for (const auto& [w, p] : ds.positional) out << "positional " << w << ": " << word_label(p) << '\n';
  return out.str();
}

std::string render_tree_text(const DependencyTree& tree) {
  std::ostringstream out;
  write_tree(out, tree, nullptr);
  return out.str();
}

DependencyStructure parse_structure_text(std::string_view text) {
  DependencyStructure ds;
  bool have_root = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const auto f = split_ws(line);
    if (f.empty() || f[0].starts_with('#')) continue;
    const auto kw = f[0];
    if (kw == "token") {
      if (f.size() < 5) throw FormatError(line_no, "token needs index, form, class and entry");
      WordToken t;
      t.index = parse_word(f[1], line_no);
      if (t.index == kRoot) throw FormatError(line_no, "ROOT is not a token");
      t.form = std::string(f[2]);
      t.entry = parse_int<std::size_t>(f[4], line_no, "entry ordinal");
      if (f[3] != "-") ds.tree.classes[t.index] = std::string(f[3]);
      auto& fs = ds.features[t.index];
      for (std::size_t i = 5; i < f.size(); ++i) {
        const auto eq = f[i].find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == f[i].size())
          throw FormatError(line_no, "expected attr=value, found '" + std::string(f[i]) + "'");
        if (!fs.emplace(std::string(f[i].substr(0, eq)), std::string(f[i].substr(eq + 1))).second)
          throw FormatError(line_no, "attribute given twice");
      }
      ds.tree.words.push_back(std::move(t));
    } else if (kw == "root") {
      if (f.size() != 3) throw FormatError(line_no, "root needs word and root entry");
      if (have_root) throw FormatError(line_no, "duplicate root line");
      have_root = true;
      ds.tree.root = parse_word(f[1], line_no);
      ds.tree.root_entry = parse_int<std::size_t>(f[2], line_no, "root entry ordinal");
    } else if (kw == "edge") {
      if (f.size() != 4) throw FormatError(line_no, "edge needs head, dtype and dependent");
      ds.tree.edges.push_back({parse_word(f[1], line_no), parse_word(f[3], line_no), std::string(f[2])});
    } else if (kw == "domain") {
      if (f.size() < 2) throw FormatError(line_no, "domain needs an id");
      OrderDomain d;
      d.id = std::string(strip_colon(f[1], line_no));
      for (std::size_t i = 2; i < f.size(); ++i) {
        if (!d.members.insert(parse_word(f[i], line_no)).second)
          throw FormatError(line_no, "duplicate domain member");
      }
      ds.domains.domains.push_back(std::move(d));
    } else if (kw == "assoc") {
      if (f.size() < 2) throw FormatError(line_no, "assoc needs a word");
      const WordIndex w = parse_word(strip_colon(f[1], line_no), line_no);
      if (ds.domains.assoc.contains(w)) throw FormatError(line_no, "duplicate assoc line");
      auto& seq = ds.domains.assoc[w];
      for (std::size_t i = 2; i < f.size(); ++i) {
        const auto eq = f[i].find('=');
        if (eq == std::string_view::npos || eq == 0 || eq + 1 == f[i].size())
          throw FormatError(line_no, "expected slot=domain, found '" + std::string(f[i]) + "'");
        seq.push_back({std::string(f[i].substr(0, eq)), std::string(f[i].substr(eq + 1))});
      }
    } else if (kw == "positional") {
      if (f.size() != 3) throw FormatError(line_no, "positional needs word and head");
      const WordIndex w = parse_word(strip_colon(f[1], line_no), line_no);
      if (!ds.positional.emplace(w, parse_word(f[2], line_no)).second)
        throw FormatError(line_no, "duplicate positional line");
    } else {
      throw FormatError(line_no, "unknown record '" + std::string(kw) + "'");
    }
  }
  if (ds.tree.words.empty()) throw FormatError(line_no, "no tokens");
  if (!have_root) throw FormatError(line_no, "missing root line");
  return ds;
}

DependencyTree parse_tree_text(std::string_view text) {
  DependencyStructure ds = parse_structure_text(text);
  if (!ds.domains.domains.empty() || !ds.domains.assoc.empty() || !ds.positional.empty())
    throw FormatError(0, "a tree must not contain domain, assoc or positional records");
  return std::move(ds.tree);
}

DependencyStructure canonicalize(const DependencyStructure& ds) {
  DependencyStructure out = ds;
  std::sort(out.tree.edges.begin(), out.tree.edges.end(),
            [](const DependencyEdge& a, const DependencyEdge& b) {
              return std::tie(a.dependent, a.head, a.dtype) < std::tie(b.dependent, b.head, b.dtype);
            });

  std::map<std::string, std::string> rename;
  std::vector<OrderDomain> ordered;
  for (auto& [w, seq] : out.domains.assoc) {
    for (auto& ref : seq) {
      const std::string fresh = word_label(w) + "." + ref.slot;
      if (!rename.contains(ref.id)) {
        if (const OrderDomain* d = ds.domains.find(ref.id)) ordered.push_back({fresh, d->members});
        rename.emplace(ref.id, fresh);
      }
      ref.id = rename.at(ref.id);
    }
  }
  std::vector<OrderDomain> rest;
  for (const auto& d : ds.domains.domains) {
    if (!rename.contains(d.id)) rest.push_back(d);
  }
  std::sort(rest.begin(), rest.end(), [](const OrderDomain& a, const OrderDomain& b) { return a.id < b.id; });
  ordered.insert(ordered.end(), rest.begin(), rest.end());
  out.domains.domains = std::move(ordered);
  return out;
}

std::string canonical_form(const DependencyStructure& ds) { return render_text(canonicalize(ds)); }

}  // namespace odg
