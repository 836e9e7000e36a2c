#include "pcsp/constructions/power_structure.hpp"

#include <bit>

namespace pcsp::constructions {

namespace {

using Mask = std::uint32_t;

bool in_mask(Mask m, Element e) { return (m >> e) & 1U; }

bool standard_member(const Relation& r, const std::vector<Mask>& sets)
{
    const std::size_t k = r.arity();
    std::vector<Mask> cover(k, 0);
    for (std::size_t t = 0; t < r.size(); ++t) {
        auto tup = r[t];
        bool inside = true;
        for (std::size_t j = 0; j < k && inside; ++j)
            inside = in_mask(sets[j], tup[j]);
        if (! inside)
            continue;
        for (std::size_t j = 0; j < k; ++j)
            cover[j] |= Mask{1} << tup[j];
    }
    return cover == sets;
}

bool literal_member(const Relation& r, const std::vector<Mask>& sets)
{
    const std::size_t k = r.arity();
    std::vector<Element> a(k, 0);
    for (std::size_t j = 0; j < k; ++j) {
        // odometer over the coordinates other than j
        for (std::size_t i = 0; i < k; ++i)
            a[i] = static_cast<Element>(std::countr_zero(sets[i]));
        while (true) {
            bool repaired = false;
            for (Element b = 0; b < 32 && ! repaired; ++b) {
                if (! in_mask(sets[j], b))
                    continue;
                a[j] = b;
                repaired = r.contains(a);
            }
            if (! repaired)
                return false;
            std::size_t i = k;
            while (i-- > 0) {
                if (i == j)
                    continue;
                Mask higher = sets[i] & ~((Mask{2} << a[i]) - 1);
                if (higher) {
                    a[i] = static_cast<Element>(std::countr_zero(higher));
                    break;
                }
                a[i] = static_cast<Element>(std::countr_zero(sets[i]));
            }
            if (i == static_cast<std::size_t>(-1))
                break;
        }
    }
    return true;
}

}  // namespace

PowerSemantics parse_semantics(const std::string& name)
{
    if (name == "standard")
        return PowerSemantics::Standard;
    if (name == "literal")
        return PowerSemantics::Literal;
    throw Error(ErrorKind::UnknownName, "unknown power-structure semantics '" + name + "'");
}

std::string to_string(PowerSemantics s)
{
    return s == PowerSemantics::Standard ? "standard" : "literal";
}

std::vector<Element> subset_of(std::size_t element)
{
    std::vector<Element> out;
    const auto mask = element + 1;
    for (Element e = 0; (std::size_t{1} << e) <= mask; ++e)
        if ((mask >> e) & 1U)
            out.push_back(e);
    return out;
}

std::size_t element_of(const std::vector<Element>& subset)
{
    std::size_t mask = 0;
    for (auto e : subset)
        mask |= std::size_t{1} << e;
    if (mask == 0)
        throw Error(ErrorKind::BadInput, "the empty set is not an element of a power structure");
    return mask - 1;
}

Structure power_structure(const Structure& s, PowerSemantics semantics, const Caps& caps)
{
    const std::size_t n = s.domain_size();
    if (n > 20)
        throw Error(ErrorKind::SizeCapExceeded, "power structure of a " + std::to_string(n) + "-element domain");
    const std::size_t size = (std::size_t{1} << n) - 1;
    if (size > caps.cells)
        throw Error(ErrorKind::SizeCapExceeded, "power structure domain " + std::to_string(size) + " exceeds cap");

    std::vector<std::string> labels;
    for (std::size_t i = 0; i < size; ++i) {
        std::string l = "{";
        for (auto e : subset_of(i))
            l += (l.size() > 1 ? "," : "") + s.label(e);
        labels.push_back(l + "}");
    }

    std::vector<Relation> rels;
    for (const auto& r : s.relations()) {
        const std::size_t k = r.arity();
        const std::size_t combos = capped_pow(size, k, caps.tuples, "power structure tuples");
        Relation out(k);
        std::vector<Element> idx(k);
        std::vector<Mask> sets(k);
        for (std::size_t c = 0; c < combos; ++c) {
            decode_tuple(c, size, idx);
            for (std::size_t j = 0; j < k; ++j)
                sets[j] = static_cast<Mask>(idx[j] + 1);
            const bool member =
                semantics == PowerSemantics::Standard ? standard_member(r, sets) : literal_member(r, sets);
            if (member)
                out.add(idx);
        }
        rels.push_back(std::move(out));
    }
    return Structure(size, s.signature(), std::move(rels), std::move(labels));
}

std::optional<Homomorphism> width1_check(const Template& t, PowerSemantics semantics, const Deadline& deadline,
    const Caps& caps)
{
    return find_homomorphism(power_structure(t.a, semantics, caps), t.b, deadline);
}

}  // namespace pcsp::constructions
