#include "pcsp/minions/function_table.hpp"

#include "pcsp/limits.hpp"

namespace pcsp::minions {

FunctionTable make_table(std::size_t arity, std::size_t in, std::size_t out, std::vector<Element> table)
{
    auto expected = bounded_pow(in, arity, table.size());
    if (! expected || *expected != table.size())
        throw Error(ErrorKind::BadInput, "table length " + std::to_string(table.size()) + " is not " +
                std::to_string(in) + "^" + std::to_string(arity));
    for (Element e : table)
        if (e >= out)
            throw Error(ErrorKind::BadInput, "table entry " + std::to_string(e) + " ≥ output domain " +
                    std::to_string(out));
    return {arity, in, out, std::move(table)};
}

FunctionTable projection(std::size_t arity, std::size_t coordinate, std::size_t domain)
{
    if (coordinate >= arity)
        throw Error(ErrorKind::BadArity, "projection coordinate out of range");
    FunctionTable f{arity, domain, domain, {}};
    const std::size_t cells = capped_pow(domain, arity, Caps{}.cells, "projection");
    f.table.resize(cells);
    std::vector<Element> x(arity);
    for (std::size_t i = 0; i < cells; ++i) {
        decode_tuple(i, domain, x);
        f.table[i] = x[coordinate];
    }
    return f;
}

MinorMap make_minor_map(std::size_t target_arity, std::vector<std::size_t> map)
{
    for (auto v : map)
        if (v >= target_arity)
            throw Error(ErrorKind::BadArity,
                "minor map value " + std::to_string(v) + " ≥ target arity " + std::to_string(target_arity));
    return {map.size(), target_arity, std::move(map)};
}

MinorMap identity_map(std::size_t arity)
{
    MinorMap m{arity, arity, std::vector<std::size_t>(arity)};
    for (std::size_t i = 0; i < arity; ++i)
        m.map[i] = i;
    return m;
}

MinorMap then(const MinorMap& pi, const MinorMap& rho)
{
    if (pi.target_arity != rho.source_arity)
        throw Error(ErrorKind::ArityMismatch, "minor maps do not compose");
    MinorMap out{pi.source_arity, rho.target_arity, std::vector<std::size_t>(pi.source_arity)};
    for (std::size_t i = 0; i < pi.source_arity; ++i)
        out.map[i] = rho.map[pi.map[i]];
    return out;
}

FunctionTable minor_apply(const FunctionTable& f, const MinorMap& pi)
{
    if (pi.source_arity != f.arity || pi.map.size() != f.arity)
        throw Error(ErrorKind::ArityMismatch, "minor map has source arity " + std::to_string(pi.source_arity) +
                ", function has arity " + std::to_string(f.arity));
    const std::size_t l = pi.target_arity;
    const std::size_t cells = capped_pow(f.in, l, Caps{}.cells * 64, "minor");

    // weight[j] = contribution of target variable j to the source index
    std::vector<std::size_t> weight(l, 0);
    std::size_t place = 1;
    for (std::size_t i = f.arity; i-- > 0;) {
        weight[pi.map[i]] += place;
        place *= f.in;
    }

    FunctionTable g{l, f.in, f.out, std::vector<Element>(cells)};
    std::vector<Element> y(l, 0);
    std::size_t src = 0;
    for (std::size_t idx = 0; idx < cells; ++idx) {
        g.table[idx] = f.table[src];
        // odometer step on y, keeping src in sync
        for (std::size_t j = l; j-- > 0;) {
            if (y[j] + 1 < f.in) {
                ++y[j];
                src += weight[j];
                break;
            }
            src -= weight[j] * y[j];
            y[j] = 0;
        }
    }
    return g;
}

std::vector<MinorMap> all_minor_maps(std::size_t k, std::size_t l)
{
    std::vector<MinorMap> out;
    if (l == 0)
        return out;
    std::vector<std::size_t> m(k, 0);
    while (true) {
        out.push_back({k, l, m});
        std::size_t i = k;
        while (i-- > 0) {
            if (++m[i] < l)
                break;
            m[i] = 0;
        }
        if (i == static_cast<std::size_t>(-1))
            break;
    }
    return out;
}

}  // namespace pcsp::minions
