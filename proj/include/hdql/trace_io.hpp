#pragma once

#include <string>
#include <string_view>

#include "hdql/calculus.hpp"

// Proof trees on disk. The text form is one node per line,
//
//   hdql-proof 1
//   gamma 1
//     @(t) p
//   tree
//   RetE t |- p
//     Monotonicity t |- @(t) p
//
// indented two spaces per level, with certificates as a "#[key=value; ...]"
// suffix. Contexts are stored once at the root and rebuilt from the rules
// (Imp / Impc add their hypothesis, Unions keeps the listed indices,
// Translation maps back through the inverse renaming).
namespace hdql::trace {

std::string to_text(const calculus::ProofTree& tree);
calculus::ProofTree from_text(std::string_view text);

std::string to_json(const calculus::ProofTree& tree);
calculus::ProofTree from_json(std::string_view text);

/// Either format, picked by the first non-blank character.
calculus::ProofTree parse(std::string_view text);

}  // namespace hdql::trace
