#include "pcsp/minions/kw.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "pcsp/minions/condition.hpp"

namespace pcsp::minions {

bool is_prime(std::size_t p)
{
    if (p < 2)
        return false;
    for (std::size_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

namespace {

std::size_t member_size(const LabelFamily& family)
{
    if (family.empty())
        throw Error(ErrorKind::BadInput, "empty family");
    const std::size_t p = family.front().size();
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (family[i].size() != p)
            throw Error(ErrorKind::BadInput, "family member " + std::to_string(i) + " has " +
                    std::to_string(family[i].size()) + " labels, expected " + std::to_string(p));
        std::set<std::string> distinct(family[i].begin(), family[i].end());
        if (distinct.size() != p)
            throw Error(ErrorKind::BadInput, "family member " + std::to_string(i) + " repeats a label");
    }
    return p;
}

}  // namespace

DisjointUnion kw_source(const LabelFamily& family, const Structure& a, const Caps& caps)
{
    const std::size_t p = member_size(family);
    const auto copy = power(a, p, caps);
    return disjoint_union(std::vector<Structure>(family.size(), copy));
}

KwResult kw_extract(const LabelFamily& family, const Template& t, const std::vector<Element>& h,
    const KwOptions& options)
{
    const std::size_t p = member_size(family);
    if (! is_prime(p))
        throw Error(ErrorKind::BadParam, "member size " + std::to_string(p) + " is not prime");

    const auto source = kw_source(family, t.a, options.caps);
    if (! is_homomorphism(h, source.structure, t.b))
        throw Error(ErrorKind::NotAHomomorphism, "h is not a homomorphism from the family power to B");

    if (! options.assume_no_cyclic &&
        satisfy_minor_condition(t, named_condition(NamedCondition::Cyclic, p), options.deadline, options.caps))
        throw Error(ErrorKind::CyclicPolymorphismExists,
            "Pol(A,B) has a cyclic operation of arity " + std::to_string(p));

    const std::size_t cells = capped_pow(t.a.domain_size(), p, options.caps.cells, "kw table");
    KwResult result;
    for (std::size_t c = 0; c < family.size(); ++c) {
        auto labels = family[c];
        std::sort(labels.begin(), labels.end());
        const auto first = h.begin() + static_cast<std::ptrdiff_t>(source.offsets[c]);
        FunctionTable hc{p, t.a.domain_size(), t.b.domain_size(), std::vector<Element>(first, first + cells)};

        // perm[i] = α(labels[i]); the relabeled table is the minor along perm
        std::vector<std::size_t> perm(p);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::optional<FunctionTable> best;
        std::vector<bool> chosen(p, false);
        do {
            options.deadline.check("kw_extract");
            auto relabeled = minor_apply(hc, MinorMap{p, p, perm});
            const std::size_t zero = static_cast<std::size_t>(std::find(perm.begin(), perm.end(), 0) - perm.begin());
            if (! best || relabeled < *best) {
                best = std::move(relabeled);
                std::fill(chosen.begin(), chosen.end(), false);
                chosen[zero] = true;
            } else if (relabeled == *best) {
                chosen[zero] = true;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<std::string> subset;
        for (std::size_t i = 0; i < p; ++i)
            if (chosen[i])
                subset.push_back(labels[i]);
        if (subset.size() == p)
            throw Error(ErrorKind::CyclicPolymorphismExists,
                "the least relabeling of member " + std::to_string(c) + " is cyclic");
        result.smallest.push_back(std::move(*best));
        result.chosen.push_back(std::move(subset));
    }
    return result;
}

}  // namespace pcsp::minions
