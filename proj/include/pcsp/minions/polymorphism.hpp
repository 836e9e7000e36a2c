#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pcsp/core/homomorphism.hpp"
#include "pcsp/minions/function_table.hpp"

namespace pcsp::minions {

/// Throws DomainMismatch when the table's domains disagree with the template.
bool is_polymorphism(const FunctionTable& f, const Template& t);

/// Colourings of A^k by B respecting every relation, one variable per cell.
ConstraintProblem polymorphism_problem(const Template& t, std::size_t arity, const Caps& caps = {});

/// Pol(A,B) at one arity, in lexicographic table order. `limit` 0 = all.
std::vector<FunctionTable> enumerate_polymorphisms(const Template& t, std::size_t arity, std::size_t limit = 0,
    const Deadline& deadline = {}, const Caps& caps = {});

/// Arity-bounded fragment of a minion, materialized eagerly. Each arity's
/// tables are sorted lexicographically, so a table's position is stable.
class MinionSlice {
public:
    /// Pol(A,B) at arities 1..bound.
    static MinionSlice polymorphisms(const Template& t, std::size_t bound, const Deadline& deadline = {},
        const Caps& caps = {});
    /// The projection minion on `domain` elements at arities 1..bound.
    static MinionSlice projections(std::size_t domain, std::size_t bound);

    std::size_t bound() const noexcept { return tables_.empty() ? 0 : tables_.size() - 1; }
    std::size_t in() const noexcept { return in_; }
    std::size_t out() const noexcept { return out_; }

    /// Throws BadArity past the bound.
    const std::vector<FunctionTable>& at(std::size_t arity) const;
    std::optional<std::size_t> index_of(const FunctionTable& f) const;
    bool contains(const FunctionTable& f) const { return index_of(f).has_value(); }
    std::size_t size() const;

private:
    MinionSlice(std::size_t in, std::size_t out) : in_(in), out_(out) {}
    std::size_t in_;
    std::size_t out_;
    std::vector<std::vector<FunctionTable>> tables_;   // indexed by arity, slot 0 unused
};

}  // namespace pcsp::minions
