#include "pcsp/minions/condition.hpp"

#include <numeric>

#include "pcsp/kernels.hpp"
#include "pcsp/minions/polymorphism.hpp"

namespace pcsp::minions {

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<std::size_t> parent_;
};

MinorMap as_map(const std::vector<std::size_t>& m, std::size_t vars)
{
    return {m.size(), vars, m};
}

}  // namespace

void validate_condition(const MinorCondition& c)
{
    for (const auto& s : c.symbols)
        if (s.arity == 0)
            throw Error(ErrorKind::BadArity, "symbol " + s.name + " has arity 0");
    for (std::size_t i = 0; i < c.identities.size(); ++i) {
        const auto& id = c.identities[i];
        const auto where = "identity " + std::to_string(i) + ": ";
        if (id.lhs >= c.symbols.size() || id.rhs >= c.symbols.size())
            throw Error(ErrorKind::BadInput, where + "unknown symbol");
        if (id.sigma.size() != c.symbols[id.lhs].arity || id.tau.size() != c.symbols[id.rhs].arity)
            throw Error(ErrorKind::BadArity, where + "map length differs from symbol arity");
        for (auto v : id.sigma)
            if (v >= c.vars)
                throw Error(ErrorKind::BadArity, where + "variable " + std::to_string(v) + " ≥ " +
                        std::to_string(c.vars));
        for (auto v : id.tau)
            if (v >= c.vars)
                throw Error(ErrorKind::BadArity, where + "variable " + std::to_string(v) + " ≥ " +
                        std::to_string(c.vars));
    }
}

NamedCondition parse_named_condition(const std::string& name)
{
    if (name == "cyclic")
        return NamedCondition::Cyclic;
    if (name == "area_rare" || name == "area-rare")
        return NamedCondition::AreaRare;
    if (name == "siggers")
        return NamedCondition::Siggers;
    if (name == "olsak")
        return NamedCondition::Olsak;
    throw Error(ErrorKind::UnknownName, "unknown minor condition '" + name + "'");
}

MinorCondition named_condition(NamedCondition which, std::size_t arity)
{
    switch (which) {
    case NamedCondition::Cyclic: {
        if (arity < 2)
            throw Error(ErrorKind::BadArity, "cyclic condition needs arity ≥ 2");
        std::vector<std::size_t> id(arity);
        std::vector<std::size_t> shift(arity);
        for (std::size_t i = 0; i < arity; ++i) {
            id[i] = i;
            shift[i] = (i + 1) % arity;
        }
        return {{{"f", arity}}, arity, {{0, id, 0, shift}}};
    }
    case NamedCondition::AreaRare:
        // f(a,r,e,a) = f(r,a,r,e)
        return {{{"f", 4}}, 3, {{0, {0, 1, 2, 0}, 0, {1, 0, 1, 2}}}};
    case NamedCondition::Siggers:
        // f(x,y,x,z,y,z) = f(y,x,z,x,z,y)
        return {{{"f", 6}}, 3, {{0, {0, 1, 0, 2, 1, 2}, 0, {1, 0, 2, 0, 2, 1}}}};
    case NamedCondition::Olsak:
        // f(x,x,y,y,y,x) = f(x,y,x,y,x,y) = f(y,x,x,x,y,y)
        return {{{"f", 6}}, 2,
            {{0, {0, 0, 1, 1, 1, 0}, 0, {0, 1, 0, 1, 0, 1}}, {0, {0, 1, 0, 1, 0, 1}, 0, {1, 0, 0, 0, 1, 1}}}};
    }
    throw Error(ErrorKind::InternalInvariant, "unhandled named condition");
}

bool satisfies(const MinorCondition& c, const Witness& w)
{
    validate_condition(c);
    if (w.size() != c.symbols.size())
        throw Error(ErrorKind::BadInput, "witness has " + std::to_string(w.size()) + " tables for " +
                std::to_string(c.symbols.size()) + " symbols");
    for (std::size_t s = 0; s < w.size(); ++s)
        if (w[s].arity != c.symbols[s].arity)
            throw Error(ErrorKind::ArityMismatch, "table for " + c.symbols[s].name + " has the wrong arity");
    for (const auto& id : c.identities)
        if (minor_apply(w[id.lhs], as_map(id.sigma, c.vars)) != minor_apply(w[id.rhs], as_map(id.tau, c.vars)))
            return false;
    return true;
}

std::optional<Witness> satisfy_minor_condition(const Template& t, const MinorCondition& c, const Deadline& deadline,
    const Caps& caps, ConditionStats* stats)
{
    validate_condition(c);
    if (! t.a.similar(t.b))
        throw Error(ErrorKind::SignatureMismatch, "template structures are not similar");
    const std::size_t in = t.a.domain_size();
    const std::size_t out = t.b.domain_size();

    std::vector<std::size_t> offset(c.symbols.size() + 1, 0);
    for (std::size_t s = 0; s < c.symbols.size(); ++s) {
        if (c.symbols[s].arity > caps.arity)
            throw Error(ErrorKind::SizeCapExceeded, "symbol " + c.symbols[s].name + " arity exceeds cap " +
                    std::to_string(caps.arity));
        offset[s + 1] = offset[s] + capped_pow(in, c.symbols[s].arity, caps.cells, "condition cells");
    }
    const std::size_t cells = offset.back();
    if (cells > caps.cells)
        throw Error(ErrorKind::SizeCapExceeded, "condition needs " + std::to_string(cells) + " cells, cap " +
                std::to_string(caps.cells));
    const std::size_t points = capped_pow(in, c.vars, caps.cells, "identity instances");

    UnionFind uf(cells);
    std::vector<Element> x(c.vars);
    auto cell = [&](std::size_t symbol, const std::vector<std::size_t>& map) {
        std::size_t idx = 0;
        for (auto v : map)
            idx = idx * in + x[v];
        return offset[symbol] + idx;
    };
    for (std::size_t p = 0; p < points; ++p) {
        decode_tuple(p, in, x);
        for (const auto& id : c.identities)
            uf.unite(cell(id.lhs, id.sigma), cell(id.rhs, id.tau));
        if ((p & 4095U) == 0)
            deadline.check("minor condition");
    }

    // classes numbered in order of their least cell
    std::vector<std::uint32_t> klass(cells);
    std::vector<std::uint32_t> root_class(cells, UINT32_MAX);
    std::uint32_t classes = 0;
    for (std::size_t i = 0; i < cells; ++i) {
        auto r = uf.find(i);
        if (root_class[r] == UINT32_MAX)
            root_class[r] = classes++;
        klass[i] = root_class[r];
    }

    ConstraintProblem problem(classes, out);
    std::vector<std::size_t> rel_id(t.a.relations().size(), SIZE_MAX);
    std::size_t emitted = 0;
    for (std::size_t s = 0; s < c.symbols.size(); ++s) {
        const std::size_t k = c.symbols[s].arity;
        for (std::size_t r = 0; r < t.a.relations().size(); ++r) {
            const auto& src = t.a.relation(r);
            if (src.empty())
                continue;
            const std::size_t count = capped_pow(src.size(), k, caps.tuples, "polymorphism constraints");
            emitted += count;
            if (emitted > caps.tuples)
                throw Error(ErrorKind::SizeCapExceeded, "condition needs more than " + std::to_string(caps.tuples) +
                        " constraints");
            if (rel_id[r] == SIZE_MAX)
                rel_id[r] = problem.add_relation(t.b.relation(r));
            const auto flat = kernels::power_tuples(src, in, k);
            const std::size_t m = src.arity();
            for (std::size_t i = 0; i < count; ++i) {
                std::vector<std::uint32_t> scope(m);
                for (std::size_t j = 0; j < m; ++j)
                    scope[j] = klass[offset[s] + flat[i * m + j]];
                problem.add_constraint(std::move(scope), rel_id[r]);
            }
        }
    }
    problem.finalize();
    if (stats)
        *stats = {cells, classes, problem.constraints().size()};

    auto found = solve_first(std::move(problem), deadline);
    if (! found)
        return std::nullopt;

    Witness w;
    for (std::size_t s = 0; s < c.symbols.size(); ++s) {
        FunctionTable f{c.symbols[s].arity, in, out, std::vector<Element>(offset[s + 1] - offset[s])};
        for (std::size_t i = 0; i < f.table.size(); ++i)
            f.table[i] = (*found)[klass[offset[s] + i]];
        w.push_back(std::move(f));
    }
    for (const auto& f : w)
        if (! is_polymorphism(f, t))
            throw Error(ErrorKind::InternalInvariant, "condition witness is not a polymorphism");
    if (! satisfies(c, w))
        throw Error(ErrorKind::InternalInvariant, "condition witness violates an identity");
    return w;
}

}  // namespace pcsp::minions
