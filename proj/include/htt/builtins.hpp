#pragma once

#include <vector>

#include "htt/term.hpp"

namespace htt {

// The fixed built-in constant table: dependent pairs and heterogeneous
// identity as primitives with judgmental eliminators.
//
//   Sigma, pair, SigmaElim   gated by no-sigma-builtins
//   HEq, hrefl, HEqElim      gated by no-heq-builtins
//   JP                       Paulin-Mohring elimination at reflexive HEq;
//                            K-bearing, additionally gated by with-K
std::vector<DeclPtr> builtin_table();

// Signature holding exactly the built-in table.
const Signature& base_signature();

// Re-checks each built-in type and verifies every delta rule: under the
// rule's telescope both sides typecheck at convertible types and the left
// reduces to the right. Throws std::logic_error on violation. Run once at
// startup by the drivers.
void validate_builtin_rules();

}  // namespace htt
