#include "pcsp/core/named.hpp"

namespace pcsp {

NamedStructure parse_named_structure(const std::string& name)
{
    if (name == "K")
        return NamedStructure::Clique;
    if (name == "H")
        return NamedStructure::NotAllEqual;
    if (name == "C")
        return NamedStructure::Cycle;
    if (name == "horn")
        return NamedStructure::Horn;
    if (name == "one_in_three")
        return NamedStructure::OneInThree;
    if (name == "k3_star")
        return NamedStructure::K3Star;
    throw Error(ErrorKind::UnknownName, "unknown named structure '" + name + "'");
}

namespace {

Relation clique_edges(std::size_t n)
{
    Relation e(2);
    for (Element i = 0; i < n; ++i)
        for (Element j = 0; j < n; ++j)
            if (i != j)
                e.add({i, j});
    return e;
}

std::size_t checked_param(long long param, const char* what)
{
    if (param < 1)
        throw Error(ErrorKind::BadParam, std::string(what) + " needs a parameter ≥ 1, got " + std::to_string(param));
    return static_cast<std::size_t>(param);
}

}  // namespace

Structure named_structure(NamedStructure which, long long param)
{
    switch (which) {
    case NamedStructure::Clique: {
        const auto n = checked_param(param, "K");
        return Structure(n, make_signature({{"E", 2}}), {clique_edges(n)});
    }
    case NamedStructure::NotAllEqual: {
        const auto n = checked_param(param, "H");
        Relation nae(3);
        for (Element a = 0; a < n; ++a)
            for (Element b = 0; b < n; ++b)
                for (Element c = 0; c < n; ++c)
                    if (! (a == b && b == c))
                        nae.add({a, b, c});
        return Structure(n, make_signature({{"NAE", 3}}), {std::move(nae)});
    }
    case NamedStructure::Cycle: {
        const auto n = checked_param(param, "C");
        Relation e(2);
        for (Element i = 0; i < n; ++i)
            e.add({i, static_cast<Element>((i + 1) % n)});
        return Structure(n, make_signature({{"E", 2}}), {std::move(e)});
    }
    case NamedStructure::Horn: {
        Relation zero(1), one(1), imp(3), nimp(3);
        zero.add({0});
        one.add({1});
        for (Element x = 0; x < 2; ++x)
            for (Element y = 0; y < 2; ++y)
                for (Element z = 0; z < 2; ++z) {
                    const bool premise = x && y;
                    if (! premise || z)
                        imp.add({x, y, z});
                    if (! premise || ! z)
                        nimp.add({x, y, z});
                }
        return Structure(2, make_signature({{"zero", 1}, {"one", 1}, {"imp", 3}, {"nimp", 3}}),
            {std::move(zero), std::move(one), std::move(imp), std::move(nimp)});
    }
    case NamedStructure::OneInThree: {
        Relation r(3);
        r.add({0, 0, 1});
        r.add({0, 1, 0});
        r.add({1, 0, 0});
        return Structure(2, make_signature({{"R", 3}}), {std::move(r)});
    }
    case NamedStructure::K3Star: {
        std::vector<Relation> rels{clique_edges(3)};
        for (Element c = 0; c < 3; ++c) {
            Relation u(1);
            u.add({c});
            rels.push_back(std::move(u));
        }
        return Structure(3, make_signature({{"E", 2}, {"c0", 1}, {"c1", 1}, {"c2", 1}}), std::move(rels));
    }
    }
    throw Error(ErrorKind::UnknownName, "unhandled named structure");
}

Structure named_structure(const std::string& name, long long param)
{
    return named_structure(parse_named_structure(name), param);
}

}  // namespace pcsp
