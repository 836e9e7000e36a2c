#pragma once

#include <optional>

#include "pcsp/core/homomorphism.hpp"

namespace pcsp::constructions {

/// Witnesses that (C, D) is a homomorphic relaxation of (A, B); the instance
/// translation is then the identity.
struct RelaxationWitness {
    Homomorphism c_to_a;
    Homomorphism b_to_d;
};

/// `original` = (A, B), `relaxed` = (C, D). Throws SignatureMismatch unless
/// all four structures are similar.
std::optional<RelaxationWitness> relaxation_reduce(const Template& original, const Template& relaxed,
    const Deadline& deadline = {});

}  // namespace pcsp::constructions
