#pragma once

#include <string_view>
#include <vector>

#include "odg/lexicon.hpp"
#include "odg/report.hpp"
#include "odg/types.hpp"

namespace odg {

/// Rootedness, single-headedness, acyclicity, connectedness, class totality,
/// and inventory membership of dtypes and classes.
ValidationReport validate_tree(const DependencyTree& tree, const Inventory& inv);

/// Non-emptiness, contiguity, pairwise nesting/disjointness, and a top
/// domain equal to all words.
ValidationReport validate_domain_structure(const OrderDomainStructure& ods,
                                           std::size_t n_words);

/// Tree plus lexical layer: entry resolution, classes and features agreeing
/// with the entries, and valency licensing of every edge.
ValidationReport validate_dependency_layer(const DependencyTree& tree,
                                           const FeatureMap& features,
                                           const Lexicon& lex);

/// Full well-formedness: tree, domains, lexical layer, the four linking
/// conditions, positional-head licensing, and all lexical constraints.
ValidationReport validate_structure(const DependencyStructure& ds,
                                    const Lexicon& lex);

/// Same verdict as validate_structure(ds, lex).ok().
bool is_valid(const DependencyStructure& ds, const Lexicon& lex);

/// Whether `head` has a valency slot for `dtype` whose class and feature
/// requirements `dependent` meets.
bool edge_licensed(const LexicalEntry& head, std::string_view dtype,
                   const LexicalEntry& dependent);

/// Word indices in surface order (0..n-1). Throws InconsistentOrder when a
/// domain is discontinuous or a domain sequence runs against the indices.
std::vector<WordIndex> surface_order(const DependencyStructure& ds);

}  // namespace odg
