#pragma once

#include "odg/lexicon.hpp"
#include "odg/report.hpp"
#include "odg/view.hpp"

namespace odg {

// Lexical constraint evaluation over realized structures. All checks assume
// the core conditions hold; they report violations rather than throw.

ValidationReport check_precedence(const PrecedencePredicate& pred,
                                  WordIndex introducer,
                                  const StructureView& view);

ValidationReport check_cardinality(const CardinalityConstraint& c,
                                   WordIndex introducer,
                                   const StructureView& view);

ValidationReport check_domain_features(const DomainFeatureRequirement& r,
                                       WordIndex introducer,
                                       const StructureView& view);

/// Every dtype on the tree path from positional(dependent) down to the
/// direct head must be in slot.extraction. Reports `positional` if the
/// positional head is not a transitive head.
ValidationReport check_extraction(const ValencySlot& slot, WordIndex dependent,
                                  const StructureView& view);

/// All cardinality, feature, and precedence constraints of w's entry.
ValidationReport check_lexical_constraints(WordIndex w, const StructureView& view);

}  // namespace odg
