#include "pcsp/constructions/pp_power.hpp"

#include <algorithm>
#include <numeric>

namespace pcsp::constructions {

namespace {

struct Classes {
    std::vector<std::uint32_t> of;   // variable -> class
    std::uint32_t count = 0;
};

// Merges equalities; classes are numbered by their least member.
Classes merge(std::size_t variables, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& eq)
{
    std::vector<std::uint32_t> parent(variables);
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [a, b] : eq) {
        auto ra = find(a), rb = find(b);
        if (ra != rb)
            parent[std::max(ra, rb)] = std::min(ra, rb);
    }
    Classes c;
    c.of.resize(variables);
    std::vector<std::uint32_t> id(variables, UINT32_MAX);
    for (std::uint32_t v = 0; v < variables; ++v) {
        auto r = find(v);
        if (id[r] == UINT32_MAX)
            id[r] = c.count++;
        c.of[v] = id[r];
    }
    return c;
}

}  // namespace

std::string free_variable(std::size_t position, std::size_t coordinate)
{
    return "x_" + std::to_string(position) + "_" + std::to_string(coordinate);
}

CompiledFormula compile_formula(const PPFormula& f, std::size_t target_arity, std::size_t n, const Signature& base)
{
    std::map<std::string, std::uint32_t> index;
    for (std::size_t i = 0; i < target_arity; ++i)
        for (std::size_t j = 0; j < n; ++j)
            index[free_variable(i, j)] = static_cast<std::uint32_t>(i * n + j);
    CompiledFormula out;
    out.free_count = target_arity * n;
    out.variables = out.free_count;
    for (const auto& e : f.exists) {
        if (index.count(e))
            throw Error(ErrorKind::BadInput, "existential '" + e + "' shadows another variable");
        index[e] = static_cast<std::uint32_t>(out.variables++);
    }
    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end())
            throw Error(ErrorKind::UndeclaredVariable, "variable '" + name + "' is neither free nor existential");
        return it->second;
    };
    for (const auto& atom : f.atoms) {
        auto rel = base.find(atom.symbol);
        if (! rel)
            throw Error(ErrorKind::UnknownName, "atom uses unknown symbol '" + atom.symbol + "'");
        if (base[*rel].arity != atom.args.size())
            throw Error(ErrorKind::ArityMismatch, "atom " + atom.symbol + " has " + std::to_string(atom.args.size()) +
                    " arguments, symbol arity " + std::to_string(base[*rel].arity));
        std::vector<std::uint32_t> vars;
        for (const auto& a : atom.args)
            vars.push_back(lookup(a));
        out.atoms.emplace_back(*rel, std::move(vars));
    }
    for (const auto& [a, b] : f.eq)
        out.eq.emplace_back(lookup(a), lookup(b));
    return out;
}

void validate_pp_power(const PPPowerDef& def, const Signature& base)
{
    if (def.n == 0)
        throw Error(ErrorKind::BadParam, "pp-power exponent must be positive");
    for (const auto& sym : def.target) {
        auto it = def.formulas.find(sym.name);
        if (it == def.formulas.end())
            throw Error(ErrorKind::BadInput, "no formula for target symbol '" + sym.name + "'");
        compile_formula(it->second, sym.arity, def.n, base);
    }
    for (const auto& [name, _] : def.formulas)
        if (! def.target.find(name))
            throw Error(ErrorKind::UnknownName, "formula for undeclared target symbol '" + name + "'");
}

Relation evaluate_formula(const CompiledFormula& f, std::size_t target_arity, std::size_t n, const Structure& s,
    const Deadline& deadline, const Caps& caps)
{
    const std::size_t d = s.domain_size();
    const auto classes = merge(f.variables, f.eq);
    ConstraintProblem problem(classes.count, d);
    std::map<std::size_t, std::size_t> rel_ids;
    for (const auto& [rel, vars] : f.atoms) {
        if (! rel_ids.count(rel))
            rel_ids[rel] = problem.add_relation(s.relation(rel));
        std::vector<std::uint32_t> scope;
        for (auto v : vars)
            scope.push_back(classes.of[v]);
        problem.add_constraint(std::move(scope), rel_ids[rel]);
    }

    std::vector<std::uint32_t> free_classes;
    for (std::size_t v = 0; v < f.free_count; ++v)
        free_classes.push_back(classes.of[v]);

    Relation out(target_arity);
    const auto solutions = solve_all(std::move(problem), caps.tuples + 1, deadline);
    if (solutions.size() > caps.tuples)
        throw Error(ErrorKind::SizeCapExceeded, "pp-formula has more than " + std::to_string(caps.tuples) +
                " satisfying assignments");
    std::vector<Element> tuple(target_arity);
    for (const auto& sol : solutions) {
        for (std::size_t i = 0; i < target_arity; ++i) {
            std::size_t idx = 0;
            for (std::size_t j = 0; j < n; ++j)
                idx = idx * d + sol[free_classes[i * n + j]];
            tuple[i] = static_cast<Element>(idx);
        }
        out.add(tuple);
    }
    out.normalize();
    return out;
}

Template pp_power_apply(const Template& t, const PPPowerDef& def, const Deadline& deadline, const Caps& caps)
{
    validate_pp_power(def, t.a.signature());
    if (! t.a.similar(t.b))
        throw Error(ErrorKind::SignatureMismatch, "template structures are not similar");
    auto side = [&](const Structure& s) {
        const std::size_t domain = capped_pow(s.domain_size(), def.n, caps.cells, "pp-power domain");
        std::vector<Relation> rels;
        for (const auto& sym : def.target) {
            const auto f = compile_formula(def.formulas.at(sym.name), sym.arity, def.n, s.signature());
            rels.push_back(evaluate_formula(f, sym.arity, def.n, s, deadline, caps));
        }
        return Structure(domain, def.target, std::move(rels));
    };
    return {side(t.a), side(t.b)};
}

PPReduction pp_reduce_instance(const PPPowerDef& def, const Signature& base, const Structure& instance)
{
    validate_pp_power(def, base);
    if (! (instance.signature() == def.target))
        throw Error(ErrorKind::SignatureMismatch, "instance signature differs from the pp-power target");
    const std::size_t n = def.n;
    const std::size_t v_count = instance.domain_size();

    std::vector<CompiledFormula> compiled;
    for (const auto& sym : def.target)
        compiled.push_back(compile_formula(def.formulas.at(sym.name), sym.arity, n, base));

    // variable layout: (v, j) -> v*n + j, then fresh existentials per occurrence
    std::vector<std::string> names;
    std::vector<std::vector<Element>> origin;
    for (std::size_t v = 0; v < v_count; ++v)
        for (std::size_t j = 0; j < n; ++j) {
            names.push_back(instance.label(static_cast<Element>(v)) + "." + std::to_string(j));
            origin.push_back({static_cast<Element>(v)});
        }

    struct Emitted {
        std::size_t rel;
        std::vector<std::uint32_t> vars;
    };
    std::vector<Emitted> emitted;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> eq;
    std::size_t occurrence = 0;
    for (std::size_t r = 0; r < def.target.size(); ++r) {
        const auto& f = compiled[r];
        const auto& formula = def.formulas.at(def.target[r].name);
        const auto& rel = instance.relation(r);
        for (std::size_t t = 0; t < rel.size(); ++t, ++occurrence) {
            auto tuple = rel[t];
            std::vector<Element> scope(tuple.begin(), tuple.end());
            std::sort(scope.begin(), scope.end());
            scope.erase(std::unique(scope.begin(), scope.end()), scope.end());

            std::vector<std::uint32_t> local(f.variables);
            for (std::size_t i = 0; i < tuple.size(); ++i)
                for (std::size_t j = 0; j < n; ++j)
                    local[i * n + j] = static_cast<std::uint32_t>(tuple[i] * n + j);
            for (std::size_t e = 0; e < formula.exists.size(); ++e) {
                local[f.free_count + e] = static_cast<std::uint32_t>(names.size());
                names.push_back("c" + std::to_string(occurrence) + "." + formula.exists[e]);
                origin.push_back(scope);
            }
            for (const auto& [brel, vars] : f.atoms) {
                Emitted em{brel, {}};
                for (auto v : vars)
                    em.vars.push_back(local[v]);
                emitted.push_back(std::move(em));
            }
            for (auto [a, b] : f.eq)
                eq.emplace_back(local[a], local[b]);
        }
    }

    const auto classes = merge(names.size(), eq);
    std::vector<std::string> labels(classes.count);
    std::vector<std::vector<Element>> class_origin(classes.count);
    std::vector<bool> named(classes.count, false);
    for (std::size_t v = 0; v < names.size(); ++v) {
        const auto c = classes.of[v];
        if (! named[c]) {
            labels[c] = names[v];
            named[c] = true;
        }
        auto& o = class_origin[c];
        o.insert(o.end(), origin[v].begin(), origin[v].end());
    }
    for (auto& o : class_origin) {
        std::sort(o.begin(), o.end());
        o.erase(std::unique(o.begin(), o.end()), o.end());
    }

    std::vector<Relation> rels;
    for (const auto& sym : base)
        rels.emplace_back(sym.arity);
    std::vector<Element> tuple;
    for (const auto& em : emitted) {
        tuple.clear();
        for (auto v : em.vars)
            tuple.push_back(classes.of[v]);
        rels[em.rel].add(tuple);
    }
    return {Structure(classes.count, base, std::move(rels), std::move(labels)), std::move(class_origin)};
}

}  // namespace pcsp::constructions
