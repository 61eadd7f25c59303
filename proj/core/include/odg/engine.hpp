#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "odg/lexicon.hpp"
#include "odg/types.hpp"

namespace odg {

struct SearchOptions {
  /// When false, runs the naive product (all orders / all slot assignments)
  /// and filters only with the validator. Results must not change.
  bool prune = true;
  /// Cap on explored search candidates; exceeding it throws ResourceExceeded.
  std::uint64_t max_candidates = 10'000'000;
};

struct SearchStats {
  std::uint64_t candidates = 0;
  std::uint64_t trees = 0;
  std::uint64_t validated = 0;
};

struct GeneratedOrder {
  std::string surface;
  DependencyStructure structure;
};

/// Ordered by surface string, then canonical serialization; duplicate-free.
struct GenerationResult {
  std::vector<GeneratedOrder> orders;
  SearchStats stats;
};

struct ParseResult {
  std::vector<DependencyStructure> structures;  // ordered by canonical form
  std::vector<std::string> diagnostics;         // filled when no parse exists
  SearchStats stats;
};

/// Every (order, structure) pair that realizes `tree` under `lex`.
/// Throws Error for an invalid tree, an unbound token, or an entry whose
/// class disagrees with the tree; ResourceExceeded past the cap.
GenerationResult generate(const DependencyTree& tree, const Lexicon& lex,
                          const SearchOptions& options = {});

/// Every valid dependency structure over `tokens` in the given order.
/// Throws UnknownToken for a form without entries.
ParseResult parse(std::span<const std::string> tokens, const Lexicon& lex,
                  const SearchOptions& options = {});

/// Whitespace tokenization; a trailing "." (standalone or attached to the
/// last word) stands for the implicit root and is dropped.
std::vector<std::string> tokenize(std::string_view sentence);

}  // namespace odg
