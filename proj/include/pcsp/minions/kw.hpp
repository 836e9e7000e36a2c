#pragma once

#include <string>
#include <vector>

#include "pcsp/core/homomorphism.hpp"
#include "pcsp/minions/function_table.hpp"

namespace pcsp::minions {

/// A family of p-element label sets. Inside each member the labels are
/// sorted, and that order fixes the coordinates of its copy of A^p.
using LabelFamily = std::vector<std::vector<std::string>>;

/// The source structure for kw_extract: one copy of A^p per family member,
/// in family order.
DisjointUnion kw_source(const LabelFamily& family, const Structure& a, const Caps& caps = {});

struct KwResult {
    std::vector<FunctionTable> smallest;                 // per member, the lex-least table over all relabelings
    std::vector<std::vector<std::string>> chosen;        // per member, a nonempty proper subset
};

struct KwOptions {
    bool assume_no_cyclic = false;   // skip the cyclic-polymorphism check
    Deadline deadline;
    Caps caps;
};

/// Throws BadParam (p not prime), BadInput (member sizes), NotAHomomorphism,
/// and CyclicPolymorphismExists when Pol(A,B) has a cyclic member of arity p.
KwResult kw_extract(const LabelFamily& family, const Template& t, const std::vector<Element>& h,
    const KwOptions& options = {});

bool is_prime(std::size_t p);

}  // namespace pcsp::minions
