// Brute-force reference computations. Nothing here calls the search engine;
// everything enumerates the full space with plain loops.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "pcsp/core/homomorphism.hpp"
#include "pcsp/minions/condition.hpp"
#include "pcsp/pas/pas.hpp"

namespace oracle {

using pcsp::Element;
using pcsp::Structure;

/// Calls `visit` on every vector in base^len, lexicographically; stops early if visit returns false.
inline void odometer(std::size_t len, std::size_t base, const std::function<bool(const std::vector<Element>&)>& visit)
{
    std::vector<Element> x(len, 0);
    if (base == 0 && len > 0)
        return;
    while (true) {
        if (! visit(x))
            return;
        std::size_t i = len;
        while (i > 0) {
            --i;
            if (++x[i] < base)
                break;
            x[i] = 0;
            if (i == 0)
                return;
        }
        if (len == 0)
            return;
    }
}

inline bool maps_tuples(const std::vector<Element>& h, const Structure& from, const Structure& to)
{
    for (std::size_t r = 0; r < from.relations().size(); ++r) {
        const auto& src = from.relation(r);
        const auto& dst = to.relation(r);
        for (std::size_t t = 0; t < src.size(); ++t) {
            std::vector<Element> img;
            for (auto e : src[t])
                img.push_back(h[e]);
            bool found = false;
            for (std::size_t u = 0; u < dst.size() && ! found; ++u)
                found = std::equal(img.begin(), img.end(), dst[u].begin());
            if (! found)
                return false;
        }
    }
    return true;
}

/// Every homomorphism, in lex order of the value vector.
inline std::vector<std::vector<Element>> homs(const Structure& from, const Structure& to)
{
    std::vector<std::vector<Element>> out;
    odometer(from.domain_size(), to.domain_size(), [&](const auto& h) {
        if (maps_tuples(h, from, to))
            out.push_back(h);
        return true;
    });
    return out;
}

inline bool hom_exists(const Structure& from, const Structure& to)
{
    bool found = false;
    odometer(from.domain_size(), to.domain_size(), [&](const auto& h) {
        found = maps_tuples(h, from, to);
        return ! found;
    });
    return found;
}

inline std::size_t ipow(std::size_t b, std::size_t e)
{
    std::size_t r = 1;
    while (e--)
        r *= b;
    return r;
}

/// Row-major index of a tuple, written out independently of the library.
inline std::size_t index_of(const std::vector<Element>& x, std::size_t base)
{
    std::size_t i = 0;
    for (auto v : x)
        i = i * base + v;
    return i;
}

inline std::vector<Element> tuple_at(std::size_t index, std::size_t base, std::size_t len)
{
    std::vector<Element> x(len);
    for (std::size_t i = len; i-- > 0;) {
        x[i] = static_cast<Element>(index % base);
        index /= base;
    }
    return x;
}

/// f: A^k -> B preserves every relation, by checking all k-columns of tuples.
inline bool is_polymorphism(const std::vector<Element>& table, std::size_t k, const Structure& a, const Structure& b)
{
    for (std::size_t r = 0; r < a.relations().size(); ++r) {
        const auto& src = a.relation(r);
        const auto& dst = b.relation(r);
        const auto arity = src.arity();
        bool ok = true;
        odometer(k, src.size(), [&](const auto& rows) {
            std::vector<Element> img(arity);
            for (std::size_t c = 0; c < arity; ++c) {
                std::vector<Element> arg(k);
                for (std::size_t i = 0; i < k; ++i)
                    arg[i] = src[rows[i]][c];
                img[c] = table[index_of(arg, a.domain_size())];
            }
            bool found = false;
            for (std::size_t u = 0; u < dst.size() && ! found; ++u)
                found = std::equal(img.begin(), img.end(), dst[u].begin());
            ok = found;
            return ok;
        });
        if (! ok)
            return false;
    }
    return true;
}

inline std::vector<std::vector<Element>> polymorphisms(std::size_t k, const Structure& a, const Structure& b)
{
    std::vector<std::vector<Element>> out;
    odometer(ipow(a.domain_size(), k), b.domain_size(), [&](const auto& table) {
        if (is_polymorphism(table, k, a, b))
            out.push_back(table);
        return true;
    });
    return out;
}

/// Checks every identity of c on every assignment of its variables.
inline bool identities_hold(const pcsp::minions::MinorCondition& c, const std::vector<std::vector<Element>>& tables,
    std::size_t in)
{
    bool ok = true;
    for (const auto& id : c.identities) {
        odometer(c.vars, in, [&](const auto& x) {
            std::vector<Element> l, r;
            for (auto s : id.sigma)
                l.push_back(x[s]);
            for (auto s : id.tau)
                r.push_back(x[s]);
            ok = tables[id.lhs][index_of(l, in)] == tables[id.rhs][index_of(r, in)];
            return ok;
        });
        if (! ok)
            return false;
    }
    return true;
}

/// Decides a minor condition by trying every combination of polymorphisms.
inline bool condition_satisfiable(const pcsp::minions::MinorCondition& c, const Structure& a, const Structure& b)
{
    std::vector<std::vector<std::vector<Element>>> pools;
    for (const auto& s : c.symbols)
        pools.push_back(polymorphisms(s.arity, a, b));
    std::vector<std::size_t> sizes;
    for (const auto& p : pools) {
        if (p.empty())
            return false;
        sizes.push_back(p.size());
    }
    std::vector<std::size_t> pick(pools.size(), 0);
    while (true) {
        std::vector<std::vector<Element>> tables;
        for (std::size_t i = 0; i < pools.size(); ++i)
            tables.push_back(pools[i][pick[i]]);
        if (identities_hold(c, tables, a.domain_size()))
            return true;
        std::size_t i = pools.size();
        while (i > 0) {
            --i;
            if (++pick[i] < sizes[i])
                break;
            pick[i] = 0;
            if (i == 0)
                return false;
        }
        if (pools.empty())
            return false;
    }
}

/// Values of f on the variables in u, increasing variable order.
inline std::vector<Element> on(const std::vector<Element>& f, pcsp::pas::VarSet u)
{
    std::vector<Element> out;
    for (std::size_t v = 0; v < f.size(); ++v)
        if ((u >> v) & 1U)
            out.push_back(f[v]);
    return out;
}

/// g restricted from its key w down to u ⊆ w.
inline std::vector<Element> shrink(const std::vector<Element>& g, pcsp::pas::VarSet w, pcsp::pas::VarSet u)
{
    std::vector<Element> out;
    std::size_t pos = 0;
    for (std::size_t v = 0; v < 64; ++v) {
        if (! ((w >> v) & 1U))
            continue;
        if ((u >> v) & 1U)
            out.push_back(g[pos]);
        ++pos;
    }
    return out;
}

inline std::vector<pcsp::pas::VarSet> subsets_of_size(std::size_t n, std::size_t k)
{
    std::vector<pcsp::pas::VarSet> out;
    for (pcsp::pas::VarSet s = 0; s < (pcsp::pas::VarSet{1} << n); ++s)
        if (static_cast<std::size_t>(__builtin_popcountll(s)) == k)
            out.push_back(s);
    return out;
}

/// Every f: V -> n such that each m-subset's restriction extends into some candidate.
inline bool is_m_solution(const std::vector<Element>& f, const pcsp::pas::PAS& p, std::size_t m)
{
    if (p.var_count() < m)
        return true;
    for (auto u : subsets_of_size(p.var_count(), m)) {
        bool found = false;
        for (const auto& [w, gs] : p.table()) {
            if ((u & ~w) != 0)
                continue;
            for (const auto& g : gs)
                found = found || shrink(g, w, u) == on(f, u);
        }
        if (! found)
            return false;
    }
    return true;
}

inline std::optional<std::vector<Element>> m_solution(const pcsp::pas::PAS& p, std::size_t m)
{
    std::optional<std::vector<Element>> out;
    odometer(p.var_count(), p.n(), [&](const auto& f) {
        if (oracle::is_m_solution(f, p, m))
            out = f;
        return ! out;
    });
    return out;
}

/// Consistency by walking every chain U_0 ⊇ U_1 ⊇ ... with |U_i| = k_i.
inline bool consistent(const std::vector<pcsp::pas::PAS>& seq)
{
    const std::size_t vars = seq.front().var_count();
    std::vector<pcsp::pas::VarSet> chain(seq.size());
    std::function<bool(std::size_t)> walk = [&](std::size_t level) -> bool {
        if (level == seq.size()) {
            for (std::size_t i = 0; i < seq.size(); ++i)
                for (std::size_t j = i + 1; j < seq.size(); ++j)
                    for (const auto& g : seq[i].at(chain[i]))
                        for (const auto& h : seq[j].at(chain[j]))
                            if (shrink(g, chain[i], chain[j]) == h)
                                return true;
            return false;
        }
        for (auto u : subsets_of_size(vars, seq[level].k())) {
            if (level > 0 && (u & ~chain[level - 1]) != 0)
                continue;
            chain[level] = u;
            if (! walk(level + 1))
                return false;
        }
        return true;
    };
    return walk(0);
}

/// Isomorphism by trying every bijection.
inline bool isomorphic(const Structure& a, const Structure& b)
{
    if (a.domain_size() != b.domain_size() || ! a.similar(b))
        return false;
    std::vector<Element> perm(a.domain_size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = static_cast<Element>(i);
    do {
        if (! maps_tuples(perm, a, b))
            continue;
        bool same = true;
        for (std::size_t r = 0; r < a.relations().size(); ++r)
            same = same && a.relation(r).size() == b.relation(r).size();
        if (same)
            return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

/// Random graph-like structure with one binary relation.
inline Structure random_digraph(std::mt19937_64& rng, std::size_t max_n, double density = 0.35)
{
    std::uniform_int_distribution<std::size_t> size(1, max_n);
    std::bernoulli_distribution coin(density);
    const auto n = size(rng);
    pcsp::Relation e(2);
    for (Element x = 0; x < n; ++x)
        for (Element y = 0; y < n; ++y)
            if (x != y && coin(rng))
                e.add({x, y});
    e.normalize();
    return Structure(n, pcsp::make_signature({{"E", 2}}), {std::move(e)});
}

/// Random symmetric loopless graph.
inline Structure random_graph(std::mt19937_64& rng, std::size_t max_n, double density = 0.4)
{
    std::uniform_int_distribution<std::size_t> size(1, max_n);
    std::bernoulli_distribution coin(density);
    const auto n = size(rng);
    pcsp::Relation e(2);
    for (Element x = 0; x < n; ++x)
        for (Element y = x + 1; y < n; ++y)
            if (coin(rng)) {
                e.add({x, y});
                e.add({y, x});
            }
    e.normalize();
    return Structure(n, pcsp::make_signature({{"E", 2}}), {std::move(e)});
}

}  // namespace oracle
