#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "pcsp/core/structure.hpp"

namespace pcsp::minions {

/// A k-ary operation A^k → B stored as a flat row-major table (argument 0 is
/// the most significant digit), the same encoding as power structures use.
struct FunctionTable {
    std::size_t arity = 0;
    std::size_t in = 0;
    std::size_t out = 0;
    std::vector<Element> table;

    Element operator()(std::span<const Element> args) const { return table[encode_tuple(args, in)]; }
    Element at(std::initializer_list<Element> args) const
    {
        return (*this)(std::span<const Element>(args.begin(), args.size()));
    }

    /// Lexicographic on (arity, in, out, table), i.e. lex on flat tables of
    /// equal shape.
    friend auto operator<=>(const FunctionTable&, const FunctionTable&) = default;
    friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
};

/// Throws BadInput if the table length is not in^arity or an entry is ≥ out.
FunctionTable make_table(std::size_t arity, std::size_t in, std::size_t out, std::vector<Element> table);

FunctionTable projection(std::size_t arity, std::size_t coordinate, std::size_t domain);

/// π: source_arity → target_arity.
struct MinorMap {
    std::size_t source_arity = 0;
    std::size_t target_arity = 0;
    std::vector<std::size_t> map;

    friend bool operator==(const MinorMap&, const MinorMap&) = default;
};

/// Validates totality and range.
MinorMap make_minor_map(std::size_t target_arity, std::vector<std::size_t> map);
MinorMap identity_map(std::size_t arity);

/// ρ∘π, so that minor_apply(minor_apply(f, π), ρ) == minor_apply(f, then(π, ρ)).
MinorMap then(const MinorMap& pi, const MinorMap& rho);

/// f_π(x_0..x_{ℓ-1}) = f(x_{π(0)}, ..., x_{π(k-1)}). Throws ArityMismatch.
FunctionTable minor_apply(const FunctionTable& f, const MinorMap& pi);

/// Every minor map k → ℓ, in lexicographic order of the map vector.
std::vector<MinorMap> all_minor_maps(std::size_t k, std::size_t l);

}  // namespace pcsp::minions
