#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pcsp/core/homomorphism.hpp"

namespace pcsp::constructions {

struct PPAtom {
    std::string symbol;
    std::vector<std::string> args;

    friend bool operator==(const PPAtom&, const PPAtom&) = default;
};

/// ∃ exists. (atoms ∧ equalities). Free variables are named x_<i>_<j> for
/// argument position i and power coordinate j.
struct PPFormula {
    std::vector<std::string> exists;
    std::vector<PPAtom> atoms;
    std::vector<std::pair<std::string, std::string>> eq;

    friend bool operator==(const PPFormula&, const PPFormula&) = default;
};

struct PPPowerDef {
    std::size_t n = 1;
    Signature target;
    std::map<std::string, PPFormula> formulas;   // one per target symbol

    friend bool operator==(const PPPowerDef&, const PPPowerDef&) = default;
};

std::string free_variable(std::size_t position, std::size_t coordinate);

/// Formula with variables resolved to indices: free x_i_j is i*n + j,
/// existentials follow in declaration order.
struct CompiledFormula {
    std::size_t free_count = 0;
    std::size_t variables = 0;
    std::vector<std::pair<std::size_t, std::vector<std::uint32_t>>> atoms;   // (base relation, vars)
    std::vector<std::pair<std::uint32_t, std::uint32_t>> eq;
};

/// Throws UndeclaredVariable, UnknownName (base symbol) or ArityMismatch.
CompiledFormula compile_formula(const PPFormula& f, std::size_t target_arity, std::size_t n, const Signature& base);

/// Checks every target symbol has a formula and every formula compiles.
void validate_pp_power(const PPPowerDef& def, const Signature& base);

/// The relation φ defines on s^n.
Relation evaluate_formula(const CompiledFormula& f, std::size_t target_arity, std::size_t n, const Structure& s,
    const Deadline& deadline = {}, const Caps& caps = {});

/// (C, D): the pp-power applied to both sides of the template.
Template pp_power_apply(const Template& t, const PPPowerDef& def, const Deadline& deadline = {}, const Caps& caps = {});

struct PPReduction {
    Structure structure;
    /// For each element, the instance elements it came from (sorted).
    std::vector<std::vector<Element>> origin;
};

/// The gadget translation of an instance over the target signature into
/// one over the base signature.
PPReduction pp_reduce_instance(const PPPowerDef& def, const Signature& base, const Structure& instance);

}  // namespace pcsp::constructions
