#include <sstream>

#include "odg/engine.hpp"

namespace odg {

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::istringstream in{std::string(sentence)};
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  if (!out.empty()) {
    if (out.back() == ".") {
      out.pop_back();
    } else if (out.back().size() > 1 && out.back().back() == '.') {
      out.back().pop_back();
    }
  }
  return out;
}

}  // namespace odg
