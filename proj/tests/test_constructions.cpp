#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "pcsp/constructions/free_structure.hpp"
#include "pcsp/constructions/power_structure.hpp"
#include "pcsp/constructions/pp_power.hpp"
#include "pcsp/constructions/relax.hpp"
#include "pcsp/core/named.hpp"
#include "pcsp/minions/polymorphism.hpp"

using namespace pcsp;
using namespace pcsp::constructions;

namespace {

using fixtures::graph_sig;
using fixtures::h;
using fixtures::identity_def;
using fixtures::k;
using fixtures::path2_def;
using fixtures::random_over;
using fixtures::tmpl;

// square-grid style n = 2 power: E'((a,b),(c,d)) iff E(a,c), E(b,d) and ∃z E(a,z) ∧ E(z,d)
PPPowerDef square_def()
{
    PPPowerDef d;
    d.n = 2;
    d.target = graph_sig();
    d.formulas["E"] = PPFormula{{"z"},
        {{"E", {"x_0_0", "x_1_0"}}, {"E", {"x_0_1", "x_1_1"}}, {"E", {"x_0_0", "z"}}, {"E", {"z", "x_1_1"}}}, {}};
    return d;
}

// two target symbols, one using equality atoms
PPPowerDef mixed_def()
{
    PPPowerDef d;
    d.n = 1;
    d.target = make_signature({{"E", 2}, {"S", 3}});
    d.formulas["E"] = PPFormula{{"u", "w"}, {{"E", {"x_0_0", "u"}}, {"E", {"w", "x_1_0"}}}, {{"u", "w"}}};
    d.formulas["S"] = PPFormula{{}, {{"E", {"x_0_0", "x_1_0"}}, {"E", {"x_1_0", "x_2_0"}}}, {{"x_0_0", "x_2_0"}}};
    return d;
}

struct ContractCount {
    std::size_t completeness = 0;
    std::size_t soundness = 0;
    std::size_t violations = 0;
};

ContractCount check_contract(const Template& base, const PPPowerDef& def, std::mt19937_64& rng, int instances)
{
    const auto cd = pp_power_apply(base, def);
    ContractCount out;
    for (int i = 0; i < instances; ++i) {
        const auto inst = random_over(rng, def.target, 6);
        const auto gamma = pp_reduce_instance(def, base.a.signature(), inst).structure;
        if (oracle::hom_exists(inst, cd.a)) {
            ++out.completeness;
            out.violations += ! oracle::hom_exists(gamma, base.a);
        }
        if (find_homomorphism(gamma, base.b)) {
            ++out.soundness;
            out.violations += ! oracle::hom_exists(inst, cd.b);
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("constructions")
{
    TEST_CASE("pp_power_apply examples")
    {
        const auto t = tmpl(k(2), k(2));
        const auto same = pp_power_apply(t, identity_def());
        CHECK(same.a == k(2));
        CHECK(same.b == k(2));

        const auto path = pp_power_apply(t, path2_def());
        const std::vector<Tuple> diag{{0, 0}, {1, 1}};
        CHECK(path.a.relation("E").tuples() == diag);
        CHECK(path.b.relation("E").tuples() == diag);

        PPPowerDef eq;
        eq.n = 1;
        eq.target = graph_sig();
        eq.formulas["E"] = PPFormula{{}, {}, {{"x_0_0", "x_1_0"}}};
        CHECK(pp_power_apply(tmpl(k(3), k(3)), eq).a.relation("E").tuples() == std::vector<Tuple>{{0, 0}, {1, 1}, {2, 2}});

        const auto sq = pp_power_apply(tmpl(k(2), k(3)), square_def());
        CHECK(sq.a.domain_size() == 4);
        CHECK(sq.b.domain_size() == 9);
    }

    TEST_CASE("pp_power_apply against a direct evaluation")
    {
        // square_def over K3: brute-force the formula
        const auto s = k(3);
        const auto got = pp_power_apply(tmpl(s, s), square_def()).a.relation("E");
        Relation want(2);
        const auto& e = s.relation("E");
        auto adj = [&](Element x, Element y) { return e.contains(std::vector<Element>{x, y}); };
        for (Element p = 0; p < 9; ++p)
            for (Element q = 0; q < 9; ++q) {
                const Element a = p / 3, b = p % 3, c = q / 3, d = q % 3;
                bool z = false;
                for (Element w = 0; w < 3; ++w)
                    z = z || (adj(a, w) && adj(w, d));
                if (adj(a, c) && adj(b, d) && z)
                    want.add({p, q});
            }
        want.normalize();
        CHECK(got == want);
    }

    TEST_CASE("pp definitions are validated")
    {
        auto bad = identity_def();
        bad.formulas["E"].atoms[0].args[1] = "y";
        CHECK_THROWS_AS(pp_power_apply(tmpl(k(2), k(2)), bad), Error);
        try {
            validate_pp_power(bad, graph_sig());
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::UndeclaredVariable);
        }
        auto unknown = identity_def();
        unknown.formulas["E"].atoms[0].symbol = "F";
        CHECK_THROWS_AS(validate_pp_power(unknown, graph_sig()), Error);
        auto arity = identity_def();
        arity.formulas["E"].atoms[0].args.push_back("x_0_0");
        CHECK_THROWS_AS(validate_pp_power(arity, graph_sig()), Error);

        Caps tight;
        tight.cells = 4;
        CHECK_THROWS_AS(pp_power_apply(tmpl(k(3), k(3)), square_def(), {}, tight), Error);
    }

    TEST_CASE("pp_reduce_instance examples")
    {
        Structure edge(2, graph_sig(), {Relation(2)});
        {
            Relation e(2);
            e.add({0, 1});
            edge = Structure(2, graph_sig(), {e});
        }
        const auto id = pp_reduce_instance(identity_def(), graph_sig(), edge);
        CHECK(oracle::isomorphic(id.structure, edge));

        const auto path = pp_reduce_instance(path2_def(), graph_sig(), edge);
        CHECK(path.structure.domain_size() == 3);
        CHECK(path.structure.relation("E").tuples() == std::vector<Tuple>{{0, 2}, {2, 1}});
        CHECK(path.origin[2] == std::vector<Element>{0, 1});

        std::mt19937_64 rng(5);
        for (int i = 0; i < 30; ++i) {
            const auto inst = random_over(rng, graph_sig(), 6);
            const auto sq = pp_reduce_instance(square_def(), graph_sig(), inst);
            CHECK(sq.structure.domain_size() == 2 * inst.domain_size() + inst.relation("E").size());
        }

        // equality atoms identify variables before emission
        const auto mixed = pp_reduce_instance(mixed_def(), graph_sig(), random_over(rng, mixed_def().target, 4));
        CHECK(mixed.structure.signature() == graph_sig());
    }

    TEST_CASE("pp reduction contract on random instances")
    {
        std::mt19937_64 rng(424242);
        std::size_t violations = 0, exercised = 0;
        const std::vector<std::pair<Template, PPPowerDef>> cases{{tmpl(k(2), k(2)), identity_def()},
            {tmpl(k(2), k(2)), path2_def()}, {tmpl(k(2), k(3)), square_def()}, {tmpl(k(2), k(3)), mixed_def()},
            {tmpl(k(3), k(4)), path2_def()}};
        for (const auto& [t, def] : cases) {
            const auto c = check_contract(t, def, rng, 60);
            violations += c.violations;
            exercised += c.completeness + c.soundness;
        }
        CHECK(violations == 0);
        CHECK(exercised > 100);
    }

    TEST_CASE("finite substructures of the gadget come from finite parts of the instance")
    {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 40; ++trial) {
            const auto inst = random_over(rng, graph_sig(), 6);
            const auto full = pp_reduce_instance(square_def(), graph_sig(), inst);
            // a random set X of gadget elements, and F = instance elements they touch
            std::bernoulli_distribution coin(0.3);
            std::vector<Element> x;
            std::set<Element> touched;
            for (Element e = 0; e < full.structure.domain_size(); ++e)
                if (coin(rng)) {
                    x.push_back(e);
                    touched.insert(full.origin[e].begin(), full.origin[e].end());
                }
            const auto sub = induced_substructure(full.structure, x).structure;
            const auto part = induced_substructure(inst, std::vector<Element>(touched.begin(), touched.end()));
            const auto local = pp_reduce_instance(square_def(), graph_sig(), part.structure).structure;
            CHECK(find_homomorphism(sub, local).has_value());
        }
    }

    TEST_CASE("relaxation_reduce")
    {
        const auto w = relaxation_reduce(tmpl(h(3), h(5)), tmpl(h(2), h(5)));
        REQUIRE(w);
        CHECK(is_homomorphism(w->c_to_a.map(), h(2), h(3)));
        CHECK(is_homomorphism(w->b_to_d.map(), h(5), h(5)));
        CHECK(relaxation_reduce(tmpl(k(2), k(3)), tmpl(k(2), k(3))));
        CHECK(! relaxation_reduce(tmpl(k(2), k(2)), tmpl(k(3), k(3))));
    }

    TEST_CASE("power structure examples")
    {
        const auto u = power_structure(k(2));
        CHECK(u.domain_size() == 3);
        const auto full = static_cast<Element>(element_of({0, 1}));
        CHECK(u.relation("E").contains(std::vector<Element>{full, full}));
        CHECK(subset_of(element_of({0, 2})) == std::vector<Element>{0, 2});

        // unary relations: S is in R iff S ⊆ R
        Relation r(1);
        r.add({0});
        r.add({2});
        const Structure s(3, make_signature({{"R", 1}}), {r});
        const auto us = power_structure(s);
        for (Element e = 0; e < us.domain_size(); ++e) {
            const auto sub = subset_of(e);
            const bool inside = std::all_of(sub.begin(), sub.end(), [](Element x) { return x != 1; });
            CHECK(us.relation("R").contains(std::vector<Element>{e}) == inside);
        }

        for (auto sem : {PowerSemantics::Standard, PowerSemantics::Literal})
            for (const auto& base : {k(3), h(2), named_structure("horn"), named_structure("one_in_three")}) {
                std::vector<Element> singleton(base.domain_size());
                for (Element a = 0; a < singleton.size(); ++a)
                    singleton[a] = static_cast<Element>(element_of({a}));
                CHECK(is_homomorphism(singleton, base, power_structure(base, sem)));
            }
        CHECK(parse_semantics("literal") == PowerSemantics::Literal);
        CHECK_THROWS_AS(parse_semantics("loose"), Error);
    }

    TEST_CASE("power structure is monotone in the base relations")
    {
        std::mt19937_64 rng(77);
        for (int trial = 0; trial < 40; ++trial) {
            const auto a = oracle::random_digraph(rng, 4, 0.3);
            std::uniform_int_distribution<Element> elem(0, static_cast<Element>(a.domain_size() - 1));
            Relation more = a.relation(0);
            more.add({elem(rng), elem(rng)});
            more.normalize();
            const Structure bigger(a.domain_size(), a.signature(), {more});
            const auto small_u = power_structure(a);
            const auto big_u = power_structure(bigger);
            for (const auto& t : small_u.relation(0).tuples())
                CHECK(big_u.relation(0).contains(t));
        }
    }

    TEST_CASE("width 1")
    {
        CHECK(! width1_check(tmpl(k(2), k(2))));
        const auto horn = named_structure("horn");
        const auto w = width1_check(tmpl(horn, horn));
        REQUIRE(w);
        CHECK((*w)(static_cast<Element>(element_of({1}))) == 1);
        CHECK((*w)(static_cast<Element>(element_of({0}))) == 0);
        CHECK((*w)(static_cast<Element>(element_of({0, 1}))) == 0);
        CHECK(! width1_check(tmpl(horn, horn), PowerSemantics::Literal));

        Relation full(2);
        full.add({0, 0});
        const Structure one(1, graph_sig(), {full});
        CHECK(width1_check(tmpl(one, one)));
        CHECK(width1_check(tmpl(one, one), PowerSemantics::Literal));
    }

    TEST_CASE("free structure over projections")
    {
        const auto fk2 = free_structure(minions::MinionSlice::projections(2, free_structure_bound(k(2))), k(2));
        CHECK(fk2.elements == std::vector<minions::FunctionTable>{minions::projection(2, 0, 2), minions::projection(2, 1, 2)});
        CHECK(fk2.structure.relation("E").tuples() == std::vector<Tuple>{{0, 1}, {1, 0}});

        for (const auto& s : {k(3), h(2), named_structure("one_in_three"), named_structure("k3_star")}) {
            const auto f = free_structure(minions::MinionSlice::projections(2, free_structure_bound(s)), s);
            CHECK(oracle::isomorphic(f.structure, s));
        }

        Relation none(2);
        const Structure empty_rel(2, graph_sig(), {none});
        const auto fe = free_structure(minions::MinionSlice::projections(2, 2), empty_rel);
        CHECK(fe.structure.relation("E").empty());
    }

    TEST_CASE("free structure over projections is its generator, all digraphs up to 3 elements")
    {
        // the complete digraph on 3 elements needs arity 9
        Caps caps;
        caps.arity = 9;
        std::size_t count = 0;
        for (std::size_t n = 1; n <= 3; ++n)
            for (std::size_t bits = 0; bits < (std::size_t{1} << (n * n)); ++bits) {
                Relation e(2);
                for (std::size_t i = 0; i < n * n; ++i)
                    if ((bits >> i) & 1U)
                        e.add({static_cast<Element>(i / n), static_cast<Element>(i % n)});
                e.normalize();
                const Structure s(n, graph_sig(), {e});
                const auto f = free_structure(minions::MinionSlice::projections(n, free_structure_bound(s)), s, caps);
                CHECK(oracle::isomorphic(f.structure, s));
                ++count;
            }
        CHECK(count == 2 + 16 + 512);
    }

    TEST_CASE("free structure over a polymorphism slice")
    {
        // F_Pol(K2,K2)(K2): binary polymorphisms are the two projections and their negations
        const auto slice = minions::MinionSlice::polymorphisms(tmpl(k(2), k(2)), 2);
        const auto f = free_structure(slice, k(2));
        CHECK(f.structure.domain_size() == 4);
        CHECK(find_homomorphism(f.structure, k(2)));
        // each generator tuple gives the edge (g_π0, g_π1) per binary g
        CHECK(f.structure.relation("E").size() == 4);
    }
}
