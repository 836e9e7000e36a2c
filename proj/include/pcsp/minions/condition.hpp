#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pcsp/core/homomorphism.hpp"
#include "pcsp/minions/function_table.hpp"

namespace pcsp::minions {

/// lhs_σ ≈ rhs_τ, with σ and τ mapping argument positions to variables.
struct Identity {
    std::size_t lhs = 0;
    std::vector<std::size_t> sigma;
    std::size_t rhs = 0;
    std::vector<std::size_t> tau;

    friend bool operator==(const Identity&, const Identity&) = default;
};

struct MinorCondition {
    std::vector<Symbol> symbols;
    std::size_t vars = 0;
    std::vector<Identity> identities;

    friend bool operator==(const MinorCondition&, const MinorCondition&) = default;
};

/// Throws BadArity if a map has the wrong length or leaves 0..vars-1, and
/// BadInput for an identity naming a missing symbol.
void validate_condition(const MinorCondition& c);

enum class NamedCondition { Cyclic, AreaRare, Siggers, Olsak };

/// Accepts "cyclic", "area_rare", "siggers", "olsak". Throws UnknownName.
NamedCondition parse_named_condition(const std::string& name);

/// `arity` is only read for Cyclic, which needs it ≥ 2 (BadArity otherwise).
MinorCondition named_condition(NamedCondition which, std::size_t arity = 0);

/// One table per symbol, in symbol order.
using Witness = std::vector<FunctionTable>;

/// Checks every identity by comparing minors on all of A^vars.
bool satisfies(const MinorCondition& c, const Witness& w);

struct ConditionStats {
    std::size_t cells = 0;     // formal cells before quotienting
    std::size_t classes = 0;   // after identities are merged
    std::size_t constraints = 0;
};

/// Assigns polymorphisms of t to the symbols so every identity holds, or
/// proves none exists. The witness is re-verified before it is returned.
std::optional<Witness> satisfy_minor_condition(const Template& t, const MinorCondition& c,
    const Deadline& deadline = {}, const Caps& caps = {}, ConditionStats* stats = nullptr);

}  // namespace pcsp::minions
