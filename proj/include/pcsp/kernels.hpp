#pragma once

// Data-parallel inner loops. Each kernel has a serial reference
// implementation (kept for testing and as the fallback) and an OpenMP one.
// Both must produce identical results, including output order.

#include <cstddef>
#include <span>
#include <vector>

#include "pcsp/core/structure.hpp"

namespace pcsp::kernels {

enum class Backend { Serial, Parallel };

bool parallel_available() noexcept;
Backend default_backend() noexcept;

namespace serial {

std::vector<Element> power_tuples(const Relation& relation, std::size_t base, std::size_t k);
bool preserves(std::span<const Element> table, std::size_t in, std::size_t k, const Relation& source,
    const Relation& target);
std::size_t count_violations(std::span<const Element> map, const Relation& source, const Relation& target);

}  // namespace serial

namespace parallel {

std::vector<Element> power_tuples(const Relation& relation, std::size_t base, std::size_t k);
bool preserves(std::span<const Element> table, std::size_t in, std::size_t k, const Relation& source,
    const Relation& target);
std::size_t count_violations(std::span<const Element> map, const Relation& source, const Relation& target);

}  // namespace parallel

/// Flat tuples of R^k for an R over `base` elements: combination c (digits
/// t_0..t_{k-1} base |R|, t_0 most significant) yields the tuple whose j-th
/// entry is the row-major index of (R[t_0][j], ..., R[t_{k-1}][j]).
inline std::vector<Element> power_tuples(const Relation& relation, std::size_t base, std::size_t k,
    Backend backend = default_backend())
{
    return backend == Backend::Parallel ? parallel::power_tuples(relation, base, k)
                                        : serial::power_tuples(relation, base, k);
}

/// True iff the k-ary `table` over `in` maps every k-column of `source`
/// tuples to a tuple of `target` (target must be normalized).
inline bool preserves(std::span<const Element> table, std::size_t in, std::size_t k, const Relation& source,
    const Relation& target, Backend backend = default_backend())
{
    return backend == Backend::Parallel ? parallel::preserves(table, in, k, source, target)
                                        : serial::preserves(table, in, k, source, target);
}

/// Number of source tuples whose image under `map` is missing from target.
inline std::size_t count_violations(std::span<const Element> map, const Relation& source, const Relation& target,
    Backend backend = default_backend())
{
    return backend == Backend::Parallel ? parallel::count_violations(map, source, target)
                                        : serial::count_violations(map, source, target);
}

}  // namespace pcsp::kernels
