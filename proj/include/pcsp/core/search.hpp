#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcsp/core/structure.hpp"
#include "pcsp/limits.hpp"

namespace pcsp {

/// Finite-domain CSP in extensional form: every constraint is a scope of
/// variables (repeats allowed) that must take a tuple of a stored relation.
/// This is the engine behind homomorphism, polymorphism, minor-condition,
/// pp-formula and m-solution search.
class ConstraintProblem {
public:
    ConstraintProblem(std::size_t variables, std::size_t values);

    std::size_t variables() const noexcept { return variables_; }
    std::size_t values() const noexcept { return values_; }

    /// Relations must be normalized; returns an id for add_constraint.
    std::size_t add_relation(Relation relation);
    void add_constraint(std::vector<std::uint32_t> scope, std::size_t relation_id);

    /// Limits a variable's initial domain.
    void restrict(std::uint32_t variable, const std::vector<Element>& allowed);

    /// Sorts and removes duplicate constraints. Called by the solvers.
    void finalize();

    struct Constraint {
        std::vector<std::uint32_t> scope;
        std::size_t relation = 0;
        friend auto operator<=>(const Constraint&, const Constraint&) = default;
    };

    const std::vector<Constraint>& constraints() const noexcept { return constraints_; }
    const Relation& relation(std::size_t id) const { return relations_[id]; }
    const std::vector<std::vector<Element>>& restrictions() const noexcept { return restrictions_; }

private:
    std::size_t variables_;
    std::size_t values_;
    std::vector<Relation> relations_;
    std::vector<Constraint> constraints_;
    std::vector<std::vector<Element>> restrictions_;   // empty = unrestricted
    bool finalized_ = false;
};

enum class VariableOrder {
    MinimumRemainingValues,   // smallest live domain, lowest index on ties
    Lexicographic,            // lowest unassigned index: solutions come out in lex order
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t revisions = 0;
};

/// Backtracking with generalized arc consistency. Values are tried in
/// ascending order, so results are deterministic.
std::optional<std::vector<Element>> solve_first(ConstraintProblem problem, const Deadline& deadline = {},
    VariableOrder order = VariableOrder::MinimumRemainingValues, SearchStats* stats = nullptr);

/// All solutions (up to `limit`, 0 = unlimited) in lexicographic order of the
/// value vector.
std::vector<std::vector<Element>> solve_all(ConstraintProblem problem, std::size_t limit = 0,
    const Deadline& deadline = {}, SearchStats* stats = nullptr);

}  // namespace pcsp
