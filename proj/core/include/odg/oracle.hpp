#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "odg/lexicon.hpp"
#include "odg/types.hpp"

namespace odg {

// Brute-force reference enumerators. They share nothing with the engine's
// search; every candidate is built from scratch and judged by the validator.

struct OracleConfig {
  enum class Enumerate { Permutations, Structures };

  std::size_t max_tokens = 7;
  Enumerate enumerate = Enumerate::Structures;
};

struct OracleStats {
  std::size_t trees = 0;
  std::size_t candidates = 0;
};

/// Canonical form -> structure, for every valid structure over `tokens`.
/// Throws TokenLimitExceeded above config.max_tokens, UnknownToken for a
/// form without entries.
std::vector<DependencyStructure> oracle_parse(std::span<const std::string> tokens,
                                              const Lexicon& lex,
                                              const OracleConfig& config = {},
                                              OracleStats* stats = nullptr);

/// (surface, structure) pairs over all permutations of the tree's words,
/// ordered by surface then canonical form.
std::vector<std::pair<std::string, DependencyStructure>> oracle_linearizations(
    const DependencyTree& tree, const Lexicon& lex, const OracleConfig& config = {},
    OracleStats* stats = nullptr);

/// Surface strings accepted for some domain realization of the tree.
std::set<std::string> oracle_orders(const DependencyTree& tree, const Lexicon& lex,
                                    const OracleConfig& config = {});

}  // namespace odg
