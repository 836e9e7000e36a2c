#include "pcsp/kernels.hpp"

namespace pcsp::kernels {

bool parallel_available() noexcept
{
#ifdef PCSP_HAVE_OPENMP
    return true;
#else
    return false;
#endif
}

Backend default_backend() noexcept
{
    return parallel_available() ? Backend::Parallel : Backend::Serial;
}

namespace serial {

std::vector<Element> power_tuples(const Relation& relation, std::size_t base, std::size_t k)
{
    const std::size_t m = relation.arity();
    const std::size_t r = relation.size();
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k; ++i)
        combos *= r;

    std::vector<Element> out(combos * m);
    std::vector<std::size_t> digits(k, 0);
    for (std::size_t c = 0; c < combos; ++c) {
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < k; ++i)
                idx = idx * base + relation[digits[i]][j];
            out[c * m + j] = static_cast<Element>(idx);
        }
        for (std::size_t i = k; i-- > 0;) {
            if (++digits[i] < r)
                break;
            digits[i] = 0;
        }
    }
    return out;
}

bool preserves(std::span<const Element> table, std::size_t in, std::size_t k, const Relation& source,
    const Relation& target)
{
    const std::size_t m = source.arity();
    const std::size_t r = source.size();
    if (r == 0)
        return true;
    std::vector<std::size_t> digits(k, 0);
    std::vector<Element> image(m);
    while (true) {
        for (std::size_t j = 0; j < m; ++j) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < k; ++i)
                idx = idx * in + source[digits[i]][j];
            image[j] = table[idx];
        }
        if (! target.contains(image))
            return false;
        std::size_t i = k;
        while (i-- > 0) {
            if (++digits[i] < r)
                break;
            digits[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1))
            return true;
    }
}

std::size_t count_violations(std::span<const Element> map, const Relation& source, const Relation& target)
{
    std::size_t bad = 0;
    std::vector<Element> image(source.arity());
    for (std::size_t t = 0; t < source.size(); ++t) {
        auto tuple = source[t];
        for (std::size_t j = 0; j < tuple.size(); ++j)
            image[j] = map[tuple[j]];
        if (! target.contains(image))
            ++bad;
    }
    return bad;
}

}  // namespace serial
}  // namespace pcsp::kernels
