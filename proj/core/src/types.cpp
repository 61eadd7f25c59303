#include "odg/types.hpp"

#include <algorithm>

#include "odg/error.hpp"

namespace odg {

const OrderDomain* OrderDomainStructure::find(std::string_view id) const {
  auto it = std::find_if(domains.begin(), domains.end(),
                         [&](const OrderDomain& d) { return d.id == id; });
  return it == domains.end() ? nullptr : &*it;
}

std::string word_label(WordIndex w) {
  return w == kRoot ? std::string("ROOT") : std::to_string(w);
}

std::string surface_string(const DependencyTree& tree) {
  std::string out;
  for (const auto& word : tree.words) {
    if (!out.empty()) out += ' ';
    out += word.form;
  }
  return out;
}

LexiconError::LexiconError(Kind kind, std::size_t line, std::size_t column,
                           const std::string& message)
    : Error("line " + std::to_string(line) + ", column " +
            std::to_string(column) + ": " + message),
      kind_(kind),
      line_(line),
      column_(column) {}

FormatError::FormatError(std::size_t line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

UnknownToken::UnknownToken(const std::string& token)
    : Error("unknown token '" + token + "': no lexicon entry"), token_(token) {}

ResourceExceeded::ResourceExceeded(std::size_t cap)
    : Error("resource exceeded: more than " + std::to_string(cap) +
            " candidates explored") {}

TokenLimitExceeded::TokenLimitExceeded(std::size_t tokens, std::size_t limit)
    : Error("token limit exceeded: " + std::to_string(tokens) + " > " +
            std::to_string(limit)) {}

}  // namespace odg
