#include "pcsp/weak/weak_hom.hpp"

#include <algorithm>

namespace pcsp::weak {

const std::vector<FunctionTable>* WeakMinionHom::images(const FunctionTable& t) const
{
    auto it = xi.find(t);
    return it == xi.end() ? nullptr : &it->second;
}

WeakMinionHom identity_weak_hom(const minions::MinionSlice& slice)
{
    WeakMinionHom h;
    for (std::size_t k = 1; k <= slice.bound(); ++k)
        for (const auto& t : slice.at(k))
            h.xi[t] = {t};
    return h;
}

MinorMap composite(const ChainOfMinors& chain, std::size_t i, std::size_t j)
{
    auto pi = minions::identity_map(chain.tables.at(i).arity);
    for (std::size_t s = i; s < j; ++s)
        pi = minions::then(pi, chain.links.at(s));
    return pi;
}

std::string to_string(WeakFailure f)
{
    switch (f) {
    case WeakFailure::None:
        return "none";
    case WeakFailure::Arity:
        return "arity";
    case WeakFailure::Cardinality:
        return "cardinality";
    case WeakFailure::Target:
        return "target";
    case WeakFailure::Chain:
        return "chain";
    }
    return "?";
}

WeakVerdict check_weak_minion_hom(const WeakMinionHom& xi, const minions::MinionSlice& source, const Template& target,
    std::size_t chain_length, std::size_t arity_bound, const Deadline& deadline, const Caps& caps)
{
    if (chain_length == 0)
        throw Error(ErrorKind::BadParam, "chains must have length ≥ 1");
    WeakVerdict verdict;
    const std::size_t bound = std::min(arity_bound, source.bound());
    static const std::vector<FunctionTable> none;

    for (const auto& [src, imgs] : xi.xi) {
        for (const auto& g : imgs) {
            if (g.arity != src.arity) {
                verdict.failure = WeakFailure::Arity;
                verdict.message = "an image of an arity-" + std::to_string(src.arity) + " table has arity " +
                    std::to_string(g.arity);
                return verdict;
            }
            if (! minions::is_polymorphism(g, target)) {
                verdict.failure = WeakFailure::Target;
                verdict.message = "an image of an arity-" + std::to_string(src.arity) +
                    " table is not a polymorphism of the target";
                return verdict;
            }
        }
        if (imgs.size() > xi.d) {
            verdict.failure = WeakFailure::Cardinality;
            verdict.message = "a table has " + std::to_string(imgs.size()) + " images, d = " + std::to_string(xi.d);
            return verdict;
        }
    }

    // minor maps between every pair of arities in the fragment
    std::vector<std::vector<std::vector<MinorMap>>> maps(bound + 1, std::vector<std::vector<MinorMap>>(bound + 1));
    for (std::size_t k = 1; k <= bound; ++k)
        for (std::size_t l = 1; l <= bound; ++l)
            maps[k][l] = minions::all_minor_maps(k, l);

    ChainOfMinors chain;
    chain.tables.resize(chain_length + 1);
    chain.links.resize(chain_length);
    auto images = [&](const FunctionTable& t) -> const std::vector<FunctionTable>& {
        const auto* p = xi.images(t);
        return p ? *p : none;
    };
    // pair (i, j) agrees if some g ∈ ξ(t_i) has g_{π_ij} ∈ ξ(t_j)
    auto agrees = [&](std::size_t i, std::size_t j) {
        const auto pi = composite(chain, i, j);
        const auto& target_set = images(chain.tables[j]);
        for (const auto& g : images(chain.tables[i]))
            if (std::find(target_set.begin(), target_set.end(), minions::minor_apply(g, pi)) != target_set.end())
                return true;
        return false;
    };

    std::size_t visited = 0;
    auto extend = [&](auto&& self, std::size_t level) -> bool {
        if (++visited > caps.chains)
            throw Error(ErrorKind::FragmentTooLarge, "more than " + std::to_string(caps.chains) + " chain prefixes");
        if ((visited & 1023U) == 0)
            deadline.check("weak minion check");
        for (std::size_t i = 0; i < level; ++i)
            if (agrees(i, level))
                return true;
        if (level == chain_length)
            return false;
        const auto& t = chain.tables[level];
        for (std::size_t l = 1; l <= bound; ++l)
            for (const auto& pi : maps[t.arity][l]) {
                chain.links[level] = pi;
                chain.tables[level + 1] = minions::minor_apply(t, pi);
                if (! self(self, level + 1))
                    return false;
            }
        return true;
    };

    for (std::size_t k = 1; k <= bound; ++k)
        for (const auto& t : source.at(k)) {
            chain.tables[0] = t;
            if (! extend(extend, 0)) {
                verdict.failure = WeakFailure::Chain;
                verdict.message = "a chain of length " + std::to_string(chain_length) + " has no agreeing pair";
                verdict.chain = chain;
                verdict.chains_checked = visited;
                return verdict;
            }
        }
    verdict.chains_checked = visited;
    return verdict;
}

}  // namespace pcsp::weak
