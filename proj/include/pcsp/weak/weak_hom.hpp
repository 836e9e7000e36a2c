#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "pcsp/minions/polymorphism.hpp"

namespace pcsp::weak {

using minions::FunctionTable;
using minions::MinorMap;

/// A (d,r) table ξ: each source table maps to at most d target tables of
/// the same arity.
struct WeakMinionHom {
    std::size_t d = 1;
    std::size_t r = 1;
    std::map<FunctionTable, std::vector<FunctionTable>> xi;

    const std::vector<FunctionTable>* images(const FunctionTable& t) const;
};

/// ξ(t) = {t} on every table of the slice, with d = r = 1.
WeakMinionHom identity_weak_hom(const minions::MinionSlice& slice);

struct ChainOfMinors {
    std::vector<FunctionTable> tables;   // t_0 .. t_r
    std::vector<MinorMap> links;         // t_{i+1} = minor_apply(t_i, links[i])
};

/// links[j-1] ∘ ... ∘ links[i], so that minor_apply(t_i, π) == t_j.
MinorMap composite(const ChainOfMinors& chain, std::size_t i, std::size_t j);

enum class WeakFailure { None, Arity, Cardinality, Target, Chain };
std::string to_string(WeakFailure f);

/// Verdict relative to the fragment only: chains through tables outside
/// the slice's arity bound are never examined.
struct WeakVerdict {
    WeakFailure failure = WeakFailure::None;
    std::string message;
    ChainOfMinors chain;            // first violating chain for WeakFailure::Chain
    std::size_t chains_checked = 0;   // chain prefixes visited

    bool ok() const noexcept { return failure == WeakFailure::None; }
};

/// Checks arity preservation, |ξ(t)| ≤ d, that every image is a
/// polymorphism of `target`, and the chain condition for all chains of
/// length `chain_length` among slice tables of arity ≤ `arity_bound`.
/// Throws FragmentTooLarge once more than caps.chains prefixes are visited.
WeakVerdict check_weak_minion_hom(const WeakMinionHom& xi, const minions::MinionSlice& source, const Template& target,
    std::size_t chain_length, std::size_t arity_bound, const Deadline& deadline = {}, const Caps& caps = {});

}  // namespace pcsp::weak
