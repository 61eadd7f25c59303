#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "odg/types.hpp"

namespace odg {

struct Violation {
  std::string condition;
  std::vector<WordIndex> words;
  std::vector<std::string> domains;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Ordered list of violations. Validation collects every violation it can
/// detect instead of stopping at the first one.
class ValidationReport {
 public:
  bool ok() const { return violations_.empty(); }
  const std::vector<Violation>& violations() const { return violations_; }

  void add(Violation v) { violations_.push_back(std::move(v)); }
  void add(std::string condition, std::vector<WordIndex> words,
           std::vector<std::string> domains, std::string message);
  void merge(const ValidationReport& other);

  bool has(std::string_view condition) const;
  /// True if some violation's condition starts with `prefix`.
  bool has_prefix(std::string_view prefix) const;
  std::size_t count(std::string_view condition) const;

  /// One line per violation: `[condition] message (words ...; domains ...)`.
  std::string render() const;

  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;

 private:
  std::vector<Violation> violations_;
};

}  // namespace odg
