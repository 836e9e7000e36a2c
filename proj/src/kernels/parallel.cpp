#include <atomic>
#include <cstdint>

#include "pcsp/kernels.hpp"

#ifdef PCSP_HAVE_OPENMP
#include <omp.h>
#endif

namespace pcsp::kernels::parallel {

namespace {

// Entry j of the power tuple selected by combination c.
inline Element combined(const Relation& relation, std::size_t base, std::size_t k, std::size_t c, std::size_t j,
    std::size_t r)
{
    // The i-th least significant digit of c selects coordinate k-1-i.
    std::size_t idx = 0;
    std::size_t scale = 1;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t digit = c % r;
        c /= r;
        idx += relation[digit][j] * scale;
        scale *= base;
    }
    return static_cast<Element>(idx);
}

}  // namespace

std::vector<Element> power_tuples(const Relation& relation, std::size_t base, std::size_t k)
{
    const std::size_t m = relation.arity();
    const std::size_t r = relation.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k; ++i)
        combos *= r;
    std::vector<Element> out(combos * m);
    if (combos == 0)
        return out;

    const auto n = static_cast<std::int64_t>(combos);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < n; ++c)
        for (std::size_t j = 0; j < m; ++j)
            out[static_cast<std::size_t>(c) * m + j] =
                combined(relation, base, k, static_cast<std::size_t>(c), j, r);
    return out;
}

bool preserves(std::span<const Element> table, std::size_t in, std::size_t k, const Relation& source,
    const Relation& target)
{
    const std::size_t m = source.arity();
    const std::size_t r = source.size();
    if (r == 0)
        return true;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k; ++i)
        combos *= r;

    std::atomic<bool> ok{true};
    const auto n = static_cast<std::int64_t>(combos);
#pragma omp parallel
    {
        std::vector<Element> image(m);
#pragma omp for schedule(static)
        for (std::int64_t c = 0; c < n; ++c) {
            if (! ok.load(std::memory_order_relaxed))
                continue;
            for (std::size_t j = 0; j < m; ++j)
                image[j] = table[combined(source, in, k, static_cast<std::size_t>(c), j, r)];
            if (! target.contains(image))
                ok.store(false, std::memory_order_relaxed);
        }
    }
    return ok.load();
}

std::size_t count_violations(std::span<const Element> map, const Relation& source, const Relation& target)
{
    const auto n = static_cast<std::int64_t>(source.size());
    std::size_t bad = 0;
#pragma omp parallel reduction(+ : bad)
    {
        std::vector<Element> image(source.arity());
#pragma omp for schedule(static)
        for (std::int64_t t = 0; t < n; ++t) {
            auto tuple = source[static_cast<std::size_t>(t)];
            for (std::size_t j = 0; j < tuple.size(); ++j)
                image[j] = map[tuple[j]];
            if (! target.contains(image))
                ++bad;
        }
    }
    return bad;
}

}  // namespace pcsp::kernels::parallel
