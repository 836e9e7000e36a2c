#pragma once

#include <vector>

#include "pcsp/minions/polymorphism.hpp"

namespace pcsp::constructions {

struct FreeStructure {
    Structure structure;
    /// Element i is elements[i]; these are the slice's tables of arity |S|.
    std::vector<minions::FunctionTable> elements;
};

/// F_M(S): domain M^(n) for n = |S|; a relation R with tuples r_0..r_{m-1}
/// (lex order) holds the tuples (g_{π_0}, ..., g_{π_{k-1}}) for g ∈ M^(m),
/// where π_i(j) = r_j[i]. The slice must reach arity max(n, m); BadArity
/// otherwise, InternalInvariant if the slice is not closed under minors.
FreeStructure free_structure(const minions::MinionSlice& slice, const Structure& generator, const Caps& caps = {});

/// The arity bound a slice needs for free_structure over `generator`.
std::size_t free_structure_bound(const Structure& generator);

}  // namespace pcsp::constructions
