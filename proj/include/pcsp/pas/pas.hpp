#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pcsp/core/structure.hpp"
#include "pcsp/limits.hpp"

namespace pcsp::pas {

/// Subset of the variable set, bit i = variable i. At most 64 variables.
using VarSet = std::uint64_t;
/// Values of an assignment on a VarSet, listed by increasing variable.
using Values = std::vector<Element>;

inline std::size_t size_of(VarSet s) { return static_cast<std::size_t>(__builtin_popcountll(s)); }
inline bool subset(VarSet a, VarSet b) { return (a & ~b) == 0; }

/// All k-subsets of {0..n-1}, in lexicographic order of their sorted
/// member lists.
std::vector<VarSet> combinations(std::size_t n, std::size_t k);

/// All k-element supersets of `base` inside {0..n-1}.
std::vector<VarSet> supersets(VarSet base, std::size_t n, std::size_t k);

/// Restricts values given on `from` to the subset `to`.
Values restrict_values(const Values& values, VarSet from, VarSet to);

struct PartialAssignment {
    VarSet domain = 0;
    Values values;

    friend auto operator<=>(const PartialAssignment&, const PartialAssignment&) = default;
};

/// A k-PAS over named variables. Keys missing from `table` map to ∅.
class PAS {
public:
    PAS() = default;
    /// Validates key sizes, vector lengths and value range (BadInput), then
    /// sorts and de-duplicates each entry and drops empty ones.
    PAS(std::vector<std::string> vars, std::size_t n, std::size_t k, std::map<VarSet, std::vector<Values>> table);

    const std::vector<std::string>& vars() const noexcept { return vars_; }
    std::size_t var_count() const noexcept { return vars_.size(); }
    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return k_; }
    const std::map<VarSet, std::vector<Values>>& table() const noexcept { return table_; }
    const std::vector<Values>& at(VarSet u) const;

    friend bool operator==(const PAS&, const PAS&) = default;

private:
    std::vector<std::string> vars_;
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    std::map<VarSet, std::vector<Values>> table_;
};

/// The k-PAS of all restrictions of the given total maps.
PAS restrictions_pas(std::vector<std::string> vars, std::size_t n, std::size_t k, const std::vector<Values>& maps);

/// Largest |I(U)|; 0 for the everywhere-empty PAS.
std::size_t pas_value(const PAS& pas);

bool is_m_solution(const Values& f, const PAS& pas, std::size_t m);

/// Backtracking over V with one constraint per m-subset U, whose allowed
/// tuples are ∪_{W ⊇ U} I(W)|_U. The result is re-checked.
std::optional<Values> find_m_solution(const PAS& pas, std::size_t m, const Deadline& deadline = {},
    const Caps& caps = {});

/// Arities must be non-increasing and V, n shared (BadInput otherwise).
void validate_sequence(const std::vector<PAS>& seq);

/// For every chain V ⊇ U_0 ⊇ ... ⊇ U_r with |U_i| = k_i, some i < j has
/// I_i(U_i)|_{U_j} ∩ I_j(U_j) ≠ ∅. Throws ChainSpaceCapExceeded.
bool is_consistent(const std::vector<PAS>& seq, const Caps& caps = {});

/// The first chain with no agreeing pair, if any.
std::optional<std::vector<VarSet>> find_inconsistent_chain(const std::vector<PAS>& seq, const Caps& caps = {});

bool is_obstacle(const PartialAssignment& f, const PAS& pas, std::size_t l);
bool is_admissible(const PartialAssignment& f, const PAS& pas, std::size_t l);

/// Both PAS must share V and n (BadInput).
bool is_refinement(const PAS& j, const PAS& i);

}  // namespace pcsp::pas
