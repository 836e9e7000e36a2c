// Small builders shared by the unit suites and the acceptance runner.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pcsp/constructions/pp_power.hpp"
#include "pcsp/core/named.hpp"
#include "pcsp/pas/pas.hpp"

namespace fixtures {

using namespace pcsp;

inline Structure k(std::size_t n) { return named_structure("K", static_cast<long long>(n)); }
inline Structure h(std::size_t n) { return named_structure("H", static_cast<long long>(n)); }
inline Template tmpl(Structure a, Structure b) { return make_template(std::move(a), std::move(b)); }
inline Signature graph_sig() { return make_signature({{"E", 2}}); }

/// E'(x, y) := E(x, y) with n = 1.
inline constructions::PPPowerDef identity_def()
{
    constructions::PPPowerDef d;
    d.n = 1;
    d.target = graph_sig();
    d.formulas["E"] = constructions::PPFormula{{}, {{"E", {"x_0_0", "x_1_0"}}}, {}};
    return d;
}

/// E'(x, y) := ∃z E(x, z) ∧ E(z, y).
inline constructions::PPPowerDef path2_def()
{
    constructions::PPPowerDef d;
    d.n = 1;
    d.target = graph_sig();
    d.formulas["E"] = constructions::PPFormula{{"z"}, {{"E", {"x_0_0", "z"}}, {"E", {"z", "x_1_0"}}}, {}};
    return d;
}

/// Up to 2n random tuples per symbol on 1..max_n elements.
inline Structure random_over(std::mt19937_64& rng, const Signature& sig, std::size_t max_n)
{
    std::uniform_int_distribution<std::size_t> size(1, max_n);
    const auto n = size(rng);
    std::vector<Relation> rels;
    for (const auto& s : sig) {
        std::uniform_int_distribution<std::size_t> count(0, 2 * n);
        std::uniform_int_distribution<Element> elem(0, static_cast<Element>(n - 1));
        Relation r(s.arity);
        const auto c = count(rng);
        for (std::size_t i = 0; i < c; ++i) {
            Tuple t(s.arity);
            for (auto& e : t)
                e = elem(rng);
            r.add(t);
        }
        r.normalize();
        rels.push_back(std::move(r));
    }
    return Structure(n, sig, std::move(rels));
}

/// Graph on n vertices from the bits of `mask`, one bit per unordered pair.
inline Structure graph(std::size_t n, unsigned mask)
{
    Relation e(2);
    unsigned bit = 0;
    for (Element x = 0; x < n; ++x)
        for (Element y = x + 1; y < n; ++y, ++bit)
            if ((mask >> bit) & 1U) {
                e.add({x, y});
                e.add({y, x});
            }
    e.normalize();
    return Structure(n, graph_sig(), {std::move(e)});
}

inline std::vector<std::string> names(std::size_t count)
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(std::string(1, static_cast<char>('a' + i)));
    return out;
}

/// Every k-PAS on `vars` variables whose slots hold at most one candidate.
inline std::vector<pas::PAS> all_value_one(std::size_t vars, std::size_t n, std::size_t k)
{
    const auto keys = pas::combinations(vars, k);
    const std::size_t per_key = oracle::ipow(n, k) + 1;
    std::vector<pas::PAS> out;
    oracle::odometer(keys.size(), per_key, [&](const auto& pick) {
        std::map<pas::VarSet, std::vector<pas::Values>> table;
        for (std::size_t i = 0; i < keys.size(); ++i)
            if (pick[i] > 0)
                table[keys[i]].push_back(oracle::tuple_at(pick[i] - 1, n, k));
        out.emplace_back(names(vars), n, k, std::move(table));
        return true;
    });
    return out;
}

}  // namespace fixtures
