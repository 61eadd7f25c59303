// Recursive-descent reader for the lexicon file format (docs/lexicon-format.md).

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "odg/error.hpp"
#include "odg/lexicon.hpp"

namespace odg {
namespace {

using Kind = LexiconError::Kind;

struct Token {
  enum Type { Ident, String, Punct, Newline, End } type = End;
  std::string text;
  std::size_t line = 0;
  std::size_t column = 0;
};

bool is_ident_char(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '-' || c == '.' || c == '\'' || c >= 0x80;
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    i += k;
    col += k;
  };
  while (i < src.size()) {
    const unsigned char c = static_cast<unsigned char>(src[i]);
    if (c == '\n') {
      out.push_back({Token::Newline, "\n", line, col});
      ++i;
      ++line;
      col = 1;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      advance(1);
    } else if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
      while (i < src.size() && src[i] != '\n') advance(1);
    } else if (c == '"') {
      const std::size_t start_col = col;
      advance(1);
      std::string text;
      while (i < src.size() && src[i] != '"' && src[i] != '\n') {
        text += src[i];
        advance(1);
      }
      if (i >= src.size() || src[i] != '"')
        throw LexiconError(Kind::Syntax, line, start_col, "unterminated string");
      advance(1);
      out.push_back({Token::String, std::move(text), line, start_col});
    } else if ((c == '<' || c == '>') && i + 1 < src.size() && src[i + 1] == '=') {
      out.push_back({Token::Punct, std::string(src.substr(i, 2)), line, col});
      advance(2);
    } else if (std::string_view("{}[]<>,;:=*").find(static_cast<char>(c)) != std::string_view::npos) {
      out.push_back({Token::Punct, std::string(1, static_cast<char>(c)), line, col});
      advance(1);
    } else if (is_ident_char(c)) {
      const std::size_t start = i, start_col = col;
      while (i < src.size() && is_ident_char(static_cast<unsigned char>(src[i]))) advance(1);
      out.push_back({Token::Ident, std::string(src.substr(start, i - start)), line, start_col});
    } else {
      throw LexiconError(Kind::Syntax, line, col,
                         std::string("unexpected character '") + static_cast<char>(c) + "'");
    }
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

// A symbol reference whose resolution waits until all inventories are read.
struct SymbolUse {
  enum What { Dtype, Class, Attr } what;
  std::string symbol;
  std::string value;  // attribute value, for Attr
  std::size_t line, column;
};

struct SlotRef {
  std::string name;
  std::size_t line, column;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(tokenize(src)) {}

  Lexicon run() {
    for (;;) {
      skip_separators();
      const Token& t = peek_raw();
      if (t.type == Token::End) break;
      if (is_kw(t, "dtypes")) {
        next_raw();
        header_symbols(lex_.inventory.dtypes);
      } else if (is_kw(t, "classes")) {
        next_raw();
        header_symbols(lex_.inventory.classes);
      } else if (is_kw(t, "attr")) {
        next_raw();
        const Token name = expect_ident("attribute name");
        auto& values = lex_.inventory.attributes[name.text];
        header_symbols(values);
      } else if (is_kw(t, "root")) {
        next_raw();
        lex_.roots.push_back(entry_block(true, std::string(kRootForm), t));
      } else if (is_kw(t, "entry")) {
        next_raw();
        const Token form = next_raw();
        if (form.type != Token::String && form.type != Token::Ident)
          error(form, "expected entry form");
        if (form.text.empty() || form.text.find_first_of(" \t") != std::string::npos)
          error(form, "entry form must be a non-empty word without whitespace");
        lex_.entries[form.text].push_back(entry_block(false, form.text, t));
      } else {
        error(t, "expected 'dtypes', 'classes', 'attr', 'root' or 'entry'");
      }
    }
    resolve_symbols();
    check_lexicon(lex_);
    return std::move(lex_);
  }

 private:
  [[noreturn]] static void error(const Token& t, const std::string& msg, Kind kind = Kind::Syntax) {
    throw LexiconError(kind, t.line, t.column,
                       msg + (t.type == Token::End ? " (at end of input)"
                              : t.type == Token::Newline ? " (at end of line)"
                                                         : ", found '" + t.text + "'"));
  }

  static bool is_kw(const Token& t, std::string_view kw) {
    return t.type == Token::Ident && t.text == kw;
  }
  static bool is_punct(const Token& t, std::string_view p) {
    return t.type == Token::Punct && t.text == p;
  }

  const Token& peek_raw(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  Token next_raw() {
    Token t = peek_raw();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  // Inside blocks newlines are insignificant.
  void skip_newlines() {
    while (peek_raw().type == Token::Newline) ++pos_;
  }
  const Token& peek(std::size_t k = 0) {
    skip_newlines();
    std::size_t p = pos_;
    for (;;) {
      while (toks_[p].type == Token::Newline) ++p;
      if (k == 0 || toks_[p].type == Token::End) return toks_[p];
      --k;
      ++p;
    }
  }
  Token next() {
    skip_newlines();
    return next_raw();
  }

  void skip_separators() {
    while (peek_raw().type == Token::Newline || is_punct(peek_raw(), ";")) ++pos_;
  }

  Token expect_ident(const char* what) {
    Token t = next();
    if (t.type != Token::Ident) error(t, std::string("expected ") + what);
    return t;
  }
  void expect_punct(std::string_view p) {
    Token t = next();
    if (!is_punct(t, p)) error(t, "expected '" + std::string(p) + "'");
  }

  // `: sym sym ...` up to the end of the line or a ';'.
  void header_symbols(SymbolSet& into) {
    Token colon = next_raw();
    if (!is_punct(colon, ":")) error(colon, "expected ':'");
    for (;;) {
      const Token& t = peek_raw();
      if (t.type == Token::Newline || t.type == Token::End || is_punct(t, ";")) break;
      if (t.type != Token::Ident) error(t, "expected symbol");
      into.insert(next_raw().text);
    }
  }

  void use(SymbolUse::What what, const Token& t, std::string value = {}) {
    uses_.push_back({what, t.text, std::move(value), t.line, t.column});
  }

  // a=v a=v ... ; stops before anything that is not `ident '=' ident`.
  void feature_pairs(FeatureSet& into, bool stop_at_class) {
    while (peek().type == Token::Ident && is_punct(peek(1), "=")) {
      if (stop_at_class && peek().text == "class") break;
      Token attr = next();
      next();
      Token value = expect_ident("feature value");
      if (!into.emplace(attr.text, value.text).second)
        error(attr, "attribute '" + attr.text + "' given twice", Kind::Invalid);
      use(SymbolUse::Attr, attr, value.text);
    }
  }

  SymbolSet symbol_list(std::string_view open, std::string_view close) {
    expect_punct(open);
    SymbolSet out;
    if (is_punct(peek(), close)) {
      next();
      return out;
    }
    for (;;) {
      Token d = expect_ident("dependency type");
      use(SymbolUse::Dtype, d);
      out.insert(d.text);
      Token sep = next();
      if (is_punct(sep, close)) break;
      if (!is_punct(sep, ",")) error(sep, "expected ',' or '" + std::string(close) + "'");
    }
    return out;
  }

  void slot_statement(LexicalEntry& e, std::vector<Token>& slot_tokens) {
    ValencySlot slot;
    Token d = expect_ident("dependency type");
    use(SymbolUse::Dtype, d);
    slot.dtype = d.text;
    slot_tokens.push_back(d);
    expect_punct(":");
    for (;;) {
      const Token& t = peek();
      if (is_punct(t, ";") || is_punct(t, "}")) break;
      if (is_kw(t, "class")) {
        next();
        expect_punct("=");
        Token c = expect_ident("word class");
        if (c.text != "any") {
          use(SymbolUse::Class, c);
          slot.word_class = c.text;
        }
      } else if (is_kw(t, "feat")) {
        next();
        feature_pairs(slot.features, true);
      } else if (is_kw(t, "required")) {
        next();
        slot.optionality = Optionality::Required;
      } else if (is_kw(t, "optional")) {
        next();
        slot.optionality = Optionality::Optional;
      } else if (is_kw(t, "extract")) {
        next();
        slot.extraction = symbol_list("{", "}");
      } else {
        error(t, "expected slot option");
      }
    }
    e.valency.push_back(std::move(slot));
  }

  LexicalEntry entry_block(bool root, std::string form, const Token& start) {
    LexicalEntry e;
    e.form = std::move(form);
    if (!root) {
      Token kw = next();
      if (!is_kw(kw, "class")) error(kw, "expected 'class='");
      expect_punct("=");
      Token c = expect_ident("word class");
      use(SymbolUse::Class, c);
      e.word_class = c.text;
    }
    expect_punct("{");

    std::vector<Token> slot_tokens;
    std::vector<std::pair<SlotRef, std::size_t>> card_refs;   // -> cardinalities
    std::vector<std::pair<SlotRef, std::size_t>> feat_refs;   // -> requirements
    std::vector<std::pair<SlotRef, std::size_t>> scope_refs;  // -> predicates
    std::vector<std::pair<Token, SymbolSet>> extracts;
    std::optional<SlotRef> self_ref;
    bool has_domains = false;

    for (;;) {
      while (is_punct(peek(), ";")) next();
      Token t = next();
      if (is_punct(t, "}")) break;
      if (t.type == Token::End) error(t, "unterminated entry block");
      if (root && !is_kw(t, "slot")) error(t, "root blocks only contain slot statements");
      if (is_kw(t, "slot")) {
        slot_statement(e, slot_tokens);
      } else if (is_kw(t, "feat")) {
        if (is_punct(peek(1), "=")) {
          feature_pairs(e.features, false);
        } else {
          Token slot = expect_ident("domain slot");
          DomainFeatureRequirement req;
          feature_pairs(req.required, false);
          if (req.required.empty()) error(peek(), "expected attr=value");
          feat_refs.push_back({{slot.text, slot.line, slot.column}, e.domains.requirements.size()});
          e.domains.requirements.push_back(std::move(req));
        }
      } else if (is_kw(t, "domains")) {
        if (has_domains) error(t, "duplicate domains statement", Kind::Invalid);
        has_domains = true;
        expect_punct("[");
        while (!is_punct(peek(), "]")) {
          Token s = expect_ident("domain slot name");
          if (e.domains.slot_index(s.text))
            error(s, "duplicate domain slot '" + s.text + "'", Kind::Invalid);
          e.domains.slots.push_back(s.text);
        }
        next();
        if (e.domains.slots.empty()) error(peek(), "empty domain template", Kind::Invalid);
        Token kw = next();
        if (!is_kw(kw, "self")) error(kw, "expected 'self='");
        expect_punct("=");
        Token s = expect_ident("domain slot name");
        self_ref = SlotRef{s.text, s.line, s.column};
      } else if (is_kw(t, "card")) {
        Token slot = expect_ident("domain slot");
        Token op = next();
        Token one = expect_ident("1");
        if (one.text != "1") error(one, "cardinality bound must be 1", Kind::Invalid);
        CardinalityConstraint c;
        if (is_punct(op, "=")) c = CardinalityConstraint::exactly_one(0);
        else if (is_punct(op, "<=")) c = CardinalityConstraint::at_most_one(0);
        else if (is_punct(op, ">=")) c = CardinalityConstraint::at_least_one(0);
        else error(op, "expected '=', '<=' or '>='");
        card_refs.push_back({{slot.text, slot.line, slot.column}, e.domains.cardinalities.size()});
        e.domains.cardinalities.push_back(c);
      } else if (is_kw(t, "order")) {
        PrecedencePredicate p;
        if (is_kw(peek(), "self")) {
          next();
          Token dir = next();
          if (is_punct(dir, "<")) p.direction = Direction::Precedes;
          else if (is_punct(dir, ">")) p.direction = Direction::Follows;
          else error(dir, "expected '<' or '>'");
          expect_punct("*");
        } else {
          p.kind = PrecedencePredicate::Kind::LabeledPair;
          Token at = peek();
          p.left = symbol_list("<", ">");
          Token dir = next();
          if (is_kw(dir, "before")) p.direction = Direction::Precedes;
          else if (is_kw(dir, "after")) p.direction = Direction::Follows;
          else error(dir, "expected 'before' or 'after'");
          p.right = symbol_list("<", ">");
          if (p.left.empty() || p.right.empty())
            error(at, "labeled predicate needs non-empty label sets", Kind::Invalid);
        }
        if (is_kw(peek(), "in")) {
          next();
          Token s = expect_ident("domain slot");
          scope_refs.push_back({{s.text, s.line, s.column}, e.predicates.size()});
        }
        e.predicates.push_back(std::move(p));
      } else if (is_kw(t, "extract")) {
        Token slot = expect_ident("slot dependency type");
        extracts.push_back({slot, symbol_list("{", "}")});
      } else {
        error(t, "expected 'slot', 'feat', 'domains', 'card', 'order' or 'extract'");
      }
      const Token& end = peek();
      if (!is_punct(end, ";") && !is_punct(end, "}")) error(end, "expected ';'");
    }

    for (std::size_t i = 0; i < e.valency.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (e.valency[i].dtype == e.valency[j].dtype)
          error(slot_tokens[i], "duplicate slot for dtype '" + e.valency[i].dtype + "'",
                Kind::DuplicateSlot);
      }
    }
    for (auto& [slot, set] : extracts) {
      auto it = std::find_if(e.valency.begin(), e.valency.end(),
                             [&](const ValencySlot& v) { return v.dtype == slot.text; });
      if (it == e.valency.end())
        error(slot, "extract refers to undeclared slot '" + slot.text + "'", Kind::UnknownSymbol);
      it->extraction = set;
    }

    if (root) {
      e.domains.slots = {std::string(kRootSlot)};
      if (e.valency.size() != 1 || !e.valency.front().required())
        error(start, "root block needs exactly one required slot", Kind::Invalid);
      return e;
    }
    if (!has_domains) {
      e.domains.slots = {"d"};
    } else {
      auto idx = e.domains.slot_index(self_ref->name);
      if (!idx) throw LexiconError(Kind::UnknownSymbol, self_ref->line, self_ref->column,
                                   "self refers to unknown domain slot '" + self_ref->name + "'");
      e.domains.self_slot = *idx;
    }
    auto resolve = [&](const SlotRef& ref) {
      auto idx = e.domains.slot_index(ref.name);
      if (!idx) throw LexiconError(Kind::UnknownSymbol, ref.line, ref.column,
                                   "unknown domain slot '" + ref.name + "'");
      return *idx;
    };
    for (auto& [ref, i] : card_refs) e.domains.cardinalities[i].slot = resolve(ref);
    for (auto& [ref, i] : feat_refs) e.domains.requirements[i].slot = resolve(ref);
    for (auto& [ref, i] : scope_refs) {
      e.predicates[i].scope = resolve(ref);
      if (e.predicates[i].kind == PrecedencePredicate::Kind::SelfVsAll &&
          *e.predicates[i].scope != e.domains.self_slot)
        throw LexiconError(Kind::Invalid, ref.line, ref.column,
                           "self predicate must be scoped to the self slot");
    }
    return e;
  }

  void resolve_symbols() const {
    const auto& inv = lex_.inventory;
    for (const auto& u : uses_) {
      switch (u.what) {
        case SymbolUse::Dtype:
          if (!inv.has_dtype(u.symbol))
            throw LexiconError(Kind::UnknownSymbol, u.line, u.column,
                               "undeclared dependency type '" + u.symbol + "'");
          break;
        case SymbolUse::Class:
          if (!inv.has_class(u.symbol))
            throw LexiconError(Kind::UnknownSymbol, u.line, u.column,
                               "undeclared word class '" + u.symbol + "'");
          break;
        case SymbolUse::Attr:
          if (!inv.attributes.contains(u.symbol))
            throw LexiconError(Kind::UnknownSymbol, u.line, u.column,
                               "undeclared attribute '" + u.symbol + "'");
          if (!inv.has_value(u.symbol, u.value))
            throw LexiconError(Kind::UnknownSymbol, u.line, u.column,
                               "undeclared value '" + u.value + "' for attribute '" + u.symbol + "'");
          break;
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  Lexicon lex_;
  std::vector<SymbolUse> uses_;
};

}  // namespace

Lexicon load_lexicon(std::string_view source) { return Parser(source).run(); }

}  // namespace odg
