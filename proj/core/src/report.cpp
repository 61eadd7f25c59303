#include "odg/report.hpp"

#include <algorithm>
#include <sstream>

namespace odg {

void ValidationReport::add(std::string condition, std::vector<WordIndex> words,
                           std::vector<std::string> domains,
                           std::string message) {
  violations_.push_back(Violation{std::move(condition), std::move(words),
                                  std::move(domains), std::move(message)});
}

void ValidationReport::merge(const ValidationReport& other) {
  violations_.insert(violations_.end(), other.violations_.begin(),
                     other.violations_.end());
}

bool ValidationReport::has(std::string_view condition) const {
  return count(condition) > 0;
}

bool ValidationReport::has_prefix(std::string_view prefix) const {
  return std::any_of(violations_.begin(), violations_.end(),
                     [&](const Violation& v) {
                       return std::string_view(v.condition).starts_with(prefix);
                     });
}

std::size_t ValidationReport::count(std::string_view condition) const {
  return static_cast<std::size_t>(
      std::count_if(violations_.begin(), violations_.end(),
                    [&](const Violation& v) { return v.condition == condition; }));
}

std::string ValidationReport::render() const {
  std::ostringstream out;
  for (const auto& v : violations_) {
    out << '[' << v.condition << "] " << v.message;
    if (!v.words.empty() || !v.domains.empty()) {
      out << " (";
      if (!v.words.empty()) {
        out << "words";
        for (WordIndex w : v.words) out << ' ' << word_label(w);
      }
      if (!v.domains.empty()) {
        if (!v.words.empty()) out << "; ";
        out << "domains";
        for (const auto& d : v.domains) out << ' ' << d;
      }
      out << ')';
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace odg
