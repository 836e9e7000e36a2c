#pragma once

#include <string>

#include "pcsp/core/structure.hpp"

namespace pcsp {

enum class NamedStructure { Clique, NotAllEqual, Cycle, Horn, OneInThree, K3Star };

/// Accepts "K", "H", "C", "horn", "one_in_three", "k3_star"; throws UnknownName.
NamedStructure parse_named_structure(const std::string& name);

/// K n: loopless complete digraph (both orientations), symbol E.
/// H n: ternary NAE = n^3 minus the constant triples.
/// C n: directed n-cycle i -> i+1 mod n.
/// horn: domain 2 with zero={0}, one={1}, imp={x∧y→z}, nimp={x∧y→¬z}.
/// one_in_three: R = {(0,0,1),(0,1,0),(1,0,0)}.
/// k3_star: K 3 plus unary c0={0}, c1={1}, c2={2}.
/// `param` is required (≥ 1) for K, H and C and ignored otherwise.
Structure named_structure(NamedStructure which, long long param = 0);
Structure named_structure(const std::string& name, long long param = 0);

}  // namespace pcsp
