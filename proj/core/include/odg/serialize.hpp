#pragma once

#include <string>
#include <string_view>

#include "odg/types.hpp"

namespace odg {

// Line-oriented text format:
//
//   token <index> <form> <class|-> <entry> [attr=value ...]
//   root <word> <root-entry>
//   edge <head> <dtype> <dependent>
//   domain <id>: <word> ...
//   assoc <word|ROOT>: <slot>=<id> ...
//   positional <word>: <head|ROOT>
//
// Blank lines and lines starting with '#' are ignored. A tree is a structure
// without domain, assoc, or positional lines.

std::string render_text(const DependencyStructure& ds);
std::string render_tree_text(const DependencyTree& tree);
/// Throws FormatError.
DependencyStructure parse_structure_text(std::string_view text);
DependencyTree parse_tree_text(std::string_view text);

std::string render_json(const DependencyStructure& ds, int indent = -1);
DependencyStructure parse_structure_json(std::string_view json);

/// Renames domains to `<owner>.<slot>`, orders domains by owner and slot
/// position, edges by dependent. Lexicon-independent.
DependencyStructure canonicalize(const DependencyStructure& ds);
/// render_text(canonicalize(ds)); equal strings mean equal structures.
std::string canonical_form(const DependencyStructure& ds);

}  // namespace odg
