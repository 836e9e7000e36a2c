#include "pcsp/constructions/free_structure.hpp"

#include <algorithm>

namespace pcsp::constructions {

std::size_t free_structure_bound(const Structure& generator)
{
    std::size_t bound = generator.domain_size();
    for (const auto& r : generator.relations())
        bound = std::max(bound, r.size());
    return bound;
}

FreeStructure free_structure(const minions::MinionSlice& slice, const Structure& generator, const Caps& caps)
{
    const std::size_t n = generator.domain_size();
    if (n == 0)
        throw Error(ErrorKind::BadArity, "free structure needs a nonempty generator");
    if (slice.in() != slice.out())
        throw Error(ErrorKind::DomainMismatch, "free structure needs a slice with equal input and output domains");
    const auto& elements = slice.at(n);
    if (elements.size() > caps.cells)
        throw Error(ErrorKind::SizeCapExceeded, "free structure domain exceeds cap");

    std::vector<Relation> rels;
    for (const auto& rel : generator.relations()) {
        const std::size_t k = rel.arity();
        const std::size_t m = rel.size();
        Relation out(k);
        if (m == 0) {
            rels.push_back(std::move(out));
            continue;
        }
        if (m > caps.arity)
            throw Error(ErrorKind::SizeCapExceeded, "relation with " + std::to_string(m) +
                    " tuples exceeds the arity cap " + std::to_string(caps.arity));
        std::vector<minions::MinorMap> pis;
        for (std::size_t i = 0; i < k; ++i) {
            minions::MinorMap pi{m, n, std::vector<std::size_t>(m)};
            for (std::size_t j = 0; j < m; ++j)
                pi.map[j] = rel[j][i];
            pis.push_back(std::move(pi));
        }
        std::vector<Element> tuple(k);
        for (const auto& g : slice.at(m)) {
            for (std::size_t i = 0; i < k; ++i) {
                auto idx = slice.index_of(minions::minor_apply(g, pis[i]));
                if (! idx)
                    throw Error(ErrorKind::InternalInvariant, "slice is not closed under minors");
                tuple[i] = static_cast<Element>(*idx);
            }
            out.add(tuple);
        }
        if (out.size() > caps.tuples)
            throw Error(ErrorKind::SizeCapExceeded, "free structure relation exceeds tuple cap");
        rels.push_back(std::move(out));
    }
    return {Structure(elements.size(), generator.signature(), std::move(rels)), elements};
}

}  // namespace pcsp::constructions
