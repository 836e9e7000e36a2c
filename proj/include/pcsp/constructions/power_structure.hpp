#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pcsp/core/homomorphism.hpp"

namespace pcsp::constructions {

enum class PowerSemantics {
    /// Every a ∈ S_i lies on some R-tuple inside S_0 × ... × S_{k-1}.
    Standard,
    /// For every j and every a ∈ S_0 × ... × S_{k-1}, some b ∈ S_j makes
    /// a with b at position j an R-tuple.
    Literal,
};

/// "standard" or "literal"; UnknownName otherwise.
PowerSemantics parse_semantics(const std::string& name);
std::string to_string(PowerSemantics s);

/// Element i is the subset with bitmask i + 1.
std::vector<Element> subset_of(std::size_t element);
std::size_t element_of(const std::vector<Element>& subset);

/// U(s): nonempty subsets of the domain. Domains above 20 elements, or
/// 2^n - 1 beyond the cell cap, raise SizeCapExceeded.
Structure power_structure(const Structure& s, PowerSemantics semantics = PowerSemantics::Standard,
    const Caps& caps = {});

/// A homomorphism U(A) → B if one exists.
std::optional<Homomorphism> width1_check(const Template& t, PowerSemantics semantics = PowerSemantics::Standard,
    const Deadline& deadline = {}, const Caps& caps = {});

}  // namespace pcsp::constructions
