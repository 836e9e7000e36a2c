// Acceptance runner: one PASS/FAIL line per criterion, each timed against
// its budget. Exit status is nonzero if any criterion fails.

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cli_cases.hpp"
#include "fixtures.hpp"
#include "pcsp/cli/cli.hpp"
#include "pcsp/constructions/free_structure.hpp"
#include "pcsp/constructions/power_structure.hpp"
#include "pcsp/errors.hpp"
#include "pcsp/minions/derive.hpp"
#include "pcsp/pas/arities.hpp"
#include "pcsp/weak/gadget.hpp"

using namespace pcsp;
using namespace fixtures;
using minions::NamedCondition;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;

    void require(bool ok, const std::string& what)
    {
        if (ok)
            return;
        pass = false;
        note += (note.empty() ? "" : "; ") + what;
    }
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Outcome()> check;
};

minions::FunctionTable majority() { return minions::make_table(3, 2, 2, {0, 0, 0, 1, 0, 1, 1, 1}); }

bool sat(const Template& t, const minions::MinorCondition& c, const Deadline& deadline = {})
{
    return minions::satisfy_minor_condition(t, c, deadline).has_value();
}

Outcome named_corpus()
{
    Outcome o;
    o.require(h(2).relation("NAE").size() == 6, "NAE on H2 does not have 6 tuples");
    o.require(named_structure("one_in_three").relation("R").tuples() == std::vector<Tuple>{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}},
        "one_in_three tuples differ");
    const auto star = named_structure("k3_star");
    std::size_t singletons = 0;
    for (std::size_t r = 0; r < star.relations().size(); ++r)
        if (star.signature()[r].arity == 1 && star.relation(r).size() == 1)
            ++singletons;
    o.require(singletons == 3, "k3_star does not have 3 unary singletons");
    o.require(star.relation("E") == k(3).relation("E"), "k3_star edges differ from K3");
    return o;
}

Outcome cyclic_facts()
{
    Outcome o;
    const auto w = minions::satisfy_minor_condition(tmpl(k(2), k(2)), minions::named_condition(NamedCondition::Cyclic, 3));
    o.require(w.has_value(), "no cyclic(3) witness over (K2,K2)");
    if (w)
        o.require(minions::is_cyclic(w->front()) && minions::is_polymorphism(w->front(), tmpl(k(2), k(2))),
            "cyclic(3) witness fails verification");
    o.require(minions::is_polymorphism(majority(), tmpl(k(2), k(2))) && minions::is_cyclic(majority()),
        "majority is not a cyclic polymorphism of (K2,K2)");
    for (std::size_t arity : {2, 3, 5})
        o.require(! sat(tmpl(h(2), h(2)), minions::named_condition(NamedCondition::Cyclic, arity)),
            "cyclic(" + std::to_string(arity) + ") satisfiable over (H2,H2)");
    o.require(! sat(tmpl(named_structure("C", 3), k(4)), minions::named_condition(NamedCondition::Cyclic, 3)),
        "cyclic(3) satisfiable over (C3,K4)");
    return o;
}

Outcome olsak_facts()
{
    Outcome o;
    const auto ol = minions::named_condition(NamedCondition::Olsak);
    o.require(! sat(tmpl(h(2), h(2)), ol), "Olšák satisfiable over (H2,H2)");
    o.require(! sat(tmpl(h(2), h(3)), ol), "Olšák satisfiable over (H2,H3)");
    const auto w = minions::satisfy_minor_condition(tmpl(k(2), k(2)), ol);
    o.require(w && oracle::identities_hold(ol, {w->front().table}, 2) &&
            oracle::is_polymorphism(w->front().table, 6, k(2), k(2)),
        "no verified Olšák witness over (K2,K2)");

    // stretch goal, reported but not gating
    try {
        const auto big = sat(tmpl(k(3), k(6)), ol, Deadline::after_seconds(15));
        o.note = std::string("stretch (K3,K6): ") + (big ? "satisfiable" : "unsatisfiable");
    } catch (const Error& e) {
        o.note = e.kind() == ErrorKind::DeadlineExceeded ? "stretch (K3,K6): not decided within 15 s"
                                                         : std::string("stretch (K3,K6): ") + e.what();
    }
    return o;
}

Outcome siggers_fact()
{
    Outcome o;
    o.require(! sat(tmpl(h(2), h(2)), minions::named_condition(NamedCondition::Siggers)), "Siggers satisfiable over (H2,H2)");
    return o;
}

Outcome derivation_ladder()
{
    Outcome o;
    const auto area_rare = minions::named_condition(NamedCondition::AreaRare);
    const auto siggers = minions::named_condition(NamedCondition::Siggers);
    const auto olsak = minions::named_condition(NamedCondition::Olsak);
    std::map<std::size_t, std::size_t> per_arity;
    for (const auto& t : {tmpl(k(2), k(2)), tmpl(named_structure("horn"), named_structure("horn"))})
        for (std::size_t arity = 2; arity <= 4; ++arity)
            for (const auto& f : minions::enumerate_polymorphisms(t, arity)) {
                if (! minions::is_cyclic(f))
                    continue;
                ++per_arity[arity];
                const auto g = minions::derive_from_cyclic(f);
                o.require(oracle::identities_hold(area_rare, {g.table}, 2) && minions::is_polymorphism(g, t),
                    "derived area-rare table fails");
                const auto s = minions::derive_from_area_rare(g, minions::SixAryTarget::Siggers);
                const auto l = minions::derive_from_area_rare(g, minions::SixAryTarget::Olsak);
                o.require(oracle::identities_hold(siggers, {s.table}, 2) && minions::is_polymorphism(s, t),
                    "derived Siggers table fails");
                o.require(oracle::identities_hold(olsak, {l.table}, 2) && minions::is_polymorphism(l, t),
                    "derived Olšák table fails");
            }
    // arities 2, 3, 4 give the three residues mod 3
    for (std::size_t arity = 2; arity <= 4; ++arity)
        o.require(per_arity[arity] > 0, "no cyclic polymorphism of arity " + std::to_string(arity));
    o.note = std::to_string(per_arity[2] + per_arity[3] + per_arity[4]) + " cyclic tables";
    return o;
}

Outcome width1()
{
    using constructions::PowerSemantics;
    Outcome o;
    const auto horn = named_structure("horn");
    o.require(! constructions::width1_check(tmpl(k(2), k(2))), "U(K2) → K2 under standard semantics");
    o.require(constructions::width1_check(tmpl(horn, horn)).has_value(), "U(horn) ↛ horn under standard semantics");
    o.require(! constructions::width1_check(tmpl(horn, horn), PowerSemantics::Literal),
        "U(horn) → horn under literal semantics");
    return o;
}

Outcome free_structures()
{
    Outcome o;
    for (const auto& s : {k(2), k(3), h(2)}) {
        const auto f = constructions::free_structure(
            minions::MinionSlice::projections(2, constructions::free_structure_bound(s)), s);
        // a bijective homomorphism onto an equal-size relation is an isomorphism
        bool iso = false;
        if (f.structure.domain_size() == s.domain_size())
            for (const auto& hom : enumerate_homomorphisms(f.structure, s)) {
                std::vector<Element> image = hom.map();
                std::sort(image.begin(), image.end());
                bool same = std::adjacent_find(image.begin(), image.end()) == image.end();
                for (std::size_t r = 0; r < s.relations().size(); ++r)
                    same = same && f.structure.relation(r).size() == s.relation(r).size();
                if (same) {
                    iso = true;
                    break;
                }
            }
        o.require(iso, "free structure not isomorphic to its generator");
        o.require(iso == oracle::isomorphic(f.structure, s), "search and brute force disagree");
    }
    return o;
}

Outcome pp_contract(std::uint64_t seed)
{
    Outcome o;
    std::mt19937_64 rng(seed);
    const auto base = tmpl(k(2), k(2));
    std::size_t violations = 0, complete = 0, sound = 0;
    for (const auto& def : {identity_def(), path2_def()}) {
        const auto cd = constructions::pp_power_apply(base, def);
        for (int i = 0; i < 200; ++i) {
            const auto inst = random_over(rng, def.target, 6);
            const auto gamma = constructions::pp_reduce_instance(def, base.a.signature(), inst).structure;
            if (oracle::hom_exists(inst, cd.a)) {
                ++complete;
                violations += ! oracle::hom_exists(gamma, base.a);
            }
            if (oracle::hom_exists(gamma, base.b)) {
                ++sound;
                violations += ! oracle::hom_exists(inst, cd.b);
            }
        }
    }
    o.require(violations == 0, std::to_string(violations) + " contract violations");
    o.require(complete > 0 && sound > 0, "contract never exercised");
    o.note = std::to_string(complete) + " completeness and " + std::to_string(sound) + " soundness checks";
    return o;
}

Outcome arity_recursion()
{
    Outcome o;
    for (std::size_t n : {2, 3})
        for (std::size_t m : {2, 3}) {
            const auto s = pas::pas_arities(n, m, {1, 1});
            o.require(s.k.size() == 2 && s.k[0] == m && s.k[1] == 1, "(1,1) schedule is not (m,1)");
        }
    const auto t = pas::pas_arities(2, 2, {2, 1});
    o.require(t.k.size() == 2 && t.k[0] == 17 && t.k[1] == 4, "(2,1) schedule is not (17,4)");
    // intermediates of the recorded hand trace
    o.require(t.levels.size() == 2, "missing recursion levels");
    if (t.levels.size() == 2) {
        o.require(t.levels[1].k_outer == 2 && t.levels[1].k_inner == 1, "inner schedule is not (2,1)");
        o.require(t.levels[1].p == 1 && t.levels[1].l == 1, "level 1 intermediates differ");
        o.require(t.levels[0].p == 2 && t.levels[0].l == 8, "level 0 intermediates differ");
    }
    return o;
}

Outcome base_case()
{
    Outcome o;
    const auto firsts = all_value_one(3, 2, 2);
    const auto seconds = all_value_one(3, 2, 1);
    o.require(firsts.size() * seconds.size() == 3375, "pair count is not 3375");
    std::size_t consistent = 0, counterexamples = 0;
    for (const auto& i0 : firsts)
        for (const auto& i1 : seconds) {
            const bool c = pas::is_consistent({i0, i1});
            o.require(c == oracle::consistent({i0, i1}), "consistency disagrees with chain enumeration");
            if (! c)
                continue;
            ++consistent;
            const auto f = pas::find_m_solution(i0, 2);
            counterexamples += ! (f && oracle::is_m_solution(*f, i0, 2));
        }
    o.require(counterexamples == 0, std::to_string(counterexamples) + " consistent pairs without a 2-solution");
    o.note = std::to_string(consistent) + " consistent pairs";
    return o;
}

Outcome obstacles(std::uint64_t seed)
{
    Outcome o;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Element> bit(0, 1);
    std::size_t checked = 0, counterexamples = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t xs = 1 + trial % 2;
        const std::size_t k = oracle::ipow(2, xs) + xs;
        const std::size_t vars = k + 1;
        const std::size_t globals = 1 + std::uniform_int_distribution<std::size_t>(0, 1)(rng);
        std::vector<pas::Values> g(globals, pas::Values(vars));
        for (auto& f : g)
            for (auto& v : f)
                v = bit(rng);
        std::map<pas::VarSet, std::vector<pas::Values>> table;
        for (auto u : pas::combinations(vars, k)) {
            // a nonempty subset of the available restrictions
            const auto mask = std::uniform_int_distribution<unsigned>(1, (1U << globals) - 1)(rng);
            for (std::size_t i = 0; i < globals; ++i)
                if ((mask >> i) & 1U)
                    table[u].push_back(oracle::on(g[i], u));
        }
        const pas::PAS p(names(vars), 2, k, table);
        for (auto x : pas::combinations(vars, xs)) {
            bool exists = false;
            oracle::odometer(xs, 2, [&](const auto& values) {
                exists = pas::is_obstacle({x, values}, p, 1);
                return ! exists;
            });
            counterexamples += ! exists;
            ++checked;
        }
    }
    o.require(counterexamples == 0, std::to_string(counterexamples) + " domains without an obstacle");
    o.note = std::to_string(checked) + " domains over 500 systems";
    return o;
}

Outcome dr_end_to_end()
{
    Outcome o;
    const auto base = tmpl(k(2), k(2));
    const auto slice = minions::MinionSlice::polymorphisms(base, 4);
    const auto xi = weak::identity_weak_hom(slice);
    std::size_t instances = 0, runs = 0, links = 0, violations = 0;
    auto fail = [&](bool ok, const std::string& what) {
        if (! ok) {
            ++violations;
            o.require(false, what);
        }
    };
    for (std::size_t n = 2; n <= 4; ++n)
        for (unsigned mask = 0; mask < (1U << (n * (n - 1) / 2)); ++mask) {
            const auto j = graph(n, mask);
            const auto homs = oracle::homs(j, k(2));
            if (homs.empty())
                continue;
            ++instances;
            const auto b = weak::dr_reduce_instance(j, base, {2, 1});
            const auto gadget = weak::gadget_structure(b);
            const auto free = constructions::free_structure(slice, gadget);
            const auto emb = weak::projection_embedding(free, b.s_size);
            for (const auto& h : homs) {
                ++runs;
                try {
                    const auto canon = weak::canonical_gadget_hom(h, b);
                    fail(oracle::maps_tuples(canon.map(), b.gamma, gadget), "canonical map is not a homomorphism");
                    const auto ex = weak::extract_pas_sequence(compose(canon.map(), emb), free, xi, b);
                    links += ex.links_checked;
                    for (const auto& p : ex.sequence) {
                        fail(pas::pas_value(p) <= 1, "PAS value above 1");
                        for (const auto& [u, gs] : p.table()) {
                            std::vector<Element> vs;
                            for (Element v = 0; v < 64; ++v)
                                if ((u >> v) & 1U)
                                    vs.push_back(v);
                            const auto sub = induced_substructure(j, vs).structure;
                            for (const auto& g : gs)
                                fail(oracle::maps_tuples(g, sub, k(2)), "member is not a partial homomorphism");
                        }
                    }
                    fail(pas::is_consistent(ex.sequence) && oracle::consistent(ex.sequence), "sequence inconsistent");
                    const auto f = pas::find_m_solution(ex.sequence[0], 2);
                    fail(f && oracle::maps_tuples(*f, j, k(2)), "2-solution is not a homomorphism");
                } catch (const Error& e) {
                    fail(false, e.what());
                }
            }
        }
    o.note = std::to_string(instances) + " instances, " + std::to_string(runs) + " colourings, " +
        std::to_string(links) + " minor links";
    return o;
}

Outcome determinism()
{
    Outcome o;
    auto replay = [] {
        std::vector<std::pair<int, std::string>> out;
        for (const auto& c : cli_cases::every_verb()) {
            std::ostringstream report, err;
            const int code = cli::run(c.args, report, err);
            out.emplace_back(code, report.str() + err.str());
        }
        return out;
    };
    const auto first = replay();
    const auto second = replay();
    const auto cases = cli_cases::every_verb();
    for (std::size_t i = 0; i < cases.size(); ++i) {
        o.require(first[i] == second[i], cases[i].args.front() + " output differs between runs");
        o.require(first[i].first == cases[i].code, cases[i].args.front() + " exit code " +
                std::to_string(first[i].first));
    }
    o.note = std::to_string(cases.size()) + " invocations";
    return o;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Acceptance criteria"};
    std::uint64_t seed = 20240611;
    app.add_option("--seed", seed, "Seed for the randomized criteria");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "named-structure corpus", 1, named_corpus},
        {2, "cyclic facts", 30, cyclic_facts},
        {3, "Olšák facts", 60, olsak_facts},
        {4, "Siggers fact", 60, siggers_fact},
        {5, "derivation ladder", 5, derivation_ladder},
        {6, "width 1", 1, width1},
        {7, "free structure over projections", 10, free_structures},
        {8, "pp-reduction contract", 60, [seed] { return pp_contract(seed); }},
        {9, "PAS arity recursion", 1, arity_recursion},
        {10, "base-case exhaustion, 3375 pairs", 30, base_case},
        {11, "obstacles on small domains, 500 seeded systems", 60, [seed] { return obstacles(seed); }},
        {12, "(d,r)-reduction end to end", 120, dr_end_to_end},
        {13, "determinism of CLI reports", 60, determinism},
    };

    std::cout << "seed " << seed << '\n';
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.check();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note = std::string("exception: ") + e.what();
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        // the stretch attempt in criterion 3 has its own deadline and is excluded from the budget
        const double counted = c.id == 3 ? std::max(0.0, seconds - 15.0) : seconds;
        if (counted > c.budget_seconds)
            o.require(false, "over budget");
        failures += ! o.pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << (o.pass ? "PASS " : "FAIL ") << c.id << ". " << c.title << " (" << seconds << " s, budget "
             << c.budget_seconds << " s)";
        if (! o.note.empty())
            line << ": " << o.note;
        std::cout << line.str() << std::endl;
    }
    std::cout << (failures ? "FAILED " : "ALL PASSED ") << criteria.size() - failures << "/" << criteria.size() << '\n';
    return failures ? 1 : 0;
}
