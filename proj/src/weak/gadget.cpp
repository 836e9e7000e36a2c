#include "pcsp/weak/gadget.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>

namespace pcsp::weak {

namespace {

std::vector<Element> members(VarSet u)
{
    std::vector<Element> out;
    for (Element v = 0; v < 64; ++v)
        if ((u >> v) & 1U)
            out.push_back(v);
    return out;
}

std::size_t bounded_binomial(std::size_t n, std::size_t k, std::size_t limit)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    // C(n, i) for i = 1..k stays an integer at every step
    unsigned __int128 c = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        c = c * (n - k + i) / i;
        if (c > limit)
            return limit + 1;
    }
    return static_cast<std::size_t>(c);
}

std::vector<pas::Values> enumerate_solutions(const Structure& instance, const Structure& target, VarSet u,
    const Deadline& deadline)
{
    const auto sub = induced_substructure(instance, members(u));
    std::vector<pas::Values> out;
    for (auto& h : enumerate_homomorphisms(sub.structure, target, 0, deadline))
        out.push_back(h.map());
    return out;
}

}  // namespace

pas::AritySchedule dr_arity_schedule(const Template& t, std::size_t d, std::size_t r)
{
    if (d == 0 || r == 0)
        throw Error(ErrorKind::BadParam, "d and r must be at least 1");
    return pas::pas_arities(t.b.domain_size(), t.a.signature().max_arity(), std::vector<std::size_t>(r + 1, d));
}

std::string partial_function_name(const PartialFunction& q)
{
    std::string name = "pf:";
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (i)
            name += ',';
        name += std::to_string(q[i].first) + '>' + std::to_string(q[i].second);
    }
    return name;
}

PartialFunction parse_partial_function(const std::string& name)
{
    if (name.rfind("pf:", 0) != 0)
        throw Error(ErrorKind::ParseError, "partial-function symbol must start with 'pf:'");
    PartialFunction q;
    std::size_t pos = 3;
    while (pos < name.size()) {
        const auto comma = name.find(',', pos);
        const auto item = name.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        const auto arrow = item.find('>');
        if (arrow == std::string::npos)
            throw Error(ErrorKind::ParseError, "bad partial-function pair '" + item + "'");
        try {
            q.emplace_back(static_cast<Element>(std::stoul(item.substr(0, arrow))),
                static_cast<Element>(std::stoul(item.substr(arrow + 1))));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::ParseError, "bad partial-function pair '" + item + "'");
        }
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return q;
}

std::optional<std::size_t> GadgetBundle::index_of(VarSet u) const
{
    auto it = std::find(family.begin(), family.end(), u);
    if (it == family.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - family.begin());
}

std::size_t GadgetBundle::sigma(std::size_t member, const pas::Values& f) const
{
    const auto& d = solutions.at(member);
    auto it = std::lower_bound(d.begin(), d.end(), f);
    if (it == d.end() || *it != f)
        throw Error(ErrorKind::InternalInvariant, "assignment is not a solution on " + member_label(member));
    return static_cast<std::size_t>(it - d.begin());
}

std::string GadgetBundle::member_label(std::size_t member) const
{
    std::string l = "{";
    for (auto v : members(family.at(member)))
        l += (l.size() > 1 ? "," : "") + instance.label(v);
    return l + "}";
}

GadgetBundle dr_reduce_instance(const Structure& instance, const Template& templ, const std::vector<std::size_t>& schedule,
    const Deadline& deadline, const Caps& caps, kernels::Backend backend)
{
    const std::size_t vars = instance.domain_size();
    if (schedule.empty())
        throw Error(ErrorKind::BadInput, "empty arity schedule");
    if (vars > 64)
        throw Error(ErrorKind::BadInput, "instances with more than 64 elements are not supported");
    if (vars < schedule.front())
        throw Error(ErrorKind::BadInput, "instance has " + std::to_string(vars) + " elements, fewer than k_0 = " +
                std::to_string(schedule.front()));
    if (! instance.similar(templ.a) || ! templ.a.similar(templ.b))
        throw Error(ErrorKind::SignatureMismatch, "instance and template are not similar");

    std::size_t total = 0;
    for (auto k : schedule)
        total += bounded_binomial(vars, k, caps.cells);
    if (total > caps.cells)
        throw Error(ErrorKind::SizeCapExceeded, "index family exceeds the cell cap");

    GadgetBundle b;
    b.instance = instance;
    b.templ = templ;
    b.schedule = schedule;
    b.s_size = capped_pow(templ.a.domain_size(), schedule.front(), caps.cells, "gadget domain");
    std::set<VarSet> seen;
    for (auto k : schedule)
        for (VarSet u : pas::combinations(vars, k))
            if (seen.insert(u).second)
                b.family.push_back(u);

    const std::size_t count = b.family.size();
    b.solutions.resize(count);
    std::vector<std::exception_ptr> errors(count);
    if (backend == kernels::Backend::Parallel && kernels::parallel_available()) {
#ifdef PCSP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
            try {
                b.solutions[i] = enumerate_solutions(instance, templ.a, b.family[i], deadline);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        for (std::size_t i = 0; i < count; ++i)
            b.solutions[i] = enumerate_solutions(instance, templ.a, b.family[i], deadline);
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);

    // Γ's relations: (U, W) for W ⊆ U, grouped by the partial function
    std::map<std::string, std::pair<PartialFunction, std::vector<std::pair<Element, Element>>>> grouped;
    std::size_t pairs = 0;
    for (std::size_t u = 0; u < count; ++u) {
        for (std::size_t w = 0; w < count; ++w) {
            if (! pas::subset(b.family[w], b.family[u]))
                continue;
            if (++pairs > caps.tuples)
                throw Error(ErrorKind::SizeCapExceeded, "Γ has more than " + std::to_string(caps.tuples) + " pairs");
            PartialFunction q;
            const auto& du = b.solutions[u];
            for (std::size_t m = 0; m < du.size(); ++m)
                q.emplace_back(static_cast<Element>(m),
                    static_cast<Element>(b.sigma(w, pas::restrict_values(du[m], b.family[u], b.family[w]))));
            auto name = partial_function_name(q);
            auto& slot = grouped[name];
            slot.first = std::move(q);
            slot.second.emplace_back(static_cast<Element>(u), static_cast<Element>(w));
        }
        deadline.check("dr_reduce_instance");
    }

    std::vector<Symbol> symbols;
    std::vector<Relation> rels;
    for (auto& [name, entry] : grouped) {
        symbols.push_back({name, 2});
        Relation r(2);
        for (auto [u, w] : entry.second)
            r.add({u, w});
        rels.push_back(std::move(r));
        b.functions.push_back(std::move(entry.first));
    }
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < count; ++i)
        labels.push_back(b.member_label(i));
    b.gamma = Structure(count, Signature(std::move(symbols)), std::move(rels), std::move(labels));
    return b;
}

Structure gadget_structure(const GadgetBundle& bundle)
{
    std::vector<Relation> rels;
    for (const auto& q : bundle.functions) {
        Relation r(2);
        for (auto [a, c] : q)
            r.add({a, c});
        rels.push_back(std::move(r));
    }
    return Structure(bundle.s_size, bundle.gamma.signature(), std::move(rels));
}

Homomorphism canonical_gadget_hom(const std::vector<Element>& h, const GadgetBundle& bundle)
{
    if (h.size() != bundle.instance.domain_size() || ! is_homomorphism(h, bundle.instance, bundle.templ.a))
        throw Error(ErrorKind::NotAHomomorphism, "h is not a homomorphism from the instance to C");
    std::vector<Element> map(bundle.family.size());
    for (std::size_t u = 0; u < bundle.family.size(); ++u) {
        pas::Values restricted;
        for (auto v : members(bundle.family[u]))
            restricted.push_back(h[v]);
        map[u] = static_cast<Element>(bundle.sigma(u, restricted));
    }
    return Homomorphism::verified(std::move(map), bundle.gamma, gadget_structure(bundle));
}

FunctionTable restrict_pad(const FunctionTable& sU, std::size_t a)
{
    if (a == 0 || a > sU.arity)
        throw Error(ErrorKind::BadArity, "padding arity " + std::to_string(a) + " outside 1.." +
                std::to_string(sU.arity));
    MinorMap iota{sU.arity, a, std::vector<std::size_t>(sU.arity, 0)};
    for (std::size_t i = 0; i < a; ++i)
        iota.map[i] = i;
    return minions::minor_apply(sU, iota);
}

MinorMap link_map(const GadgetBundle& bundle, std::size_t u, std::size_t w)
{
    const auto& du = bundle.solutions.at(u);
    MinorMap pi{du.size(), bundle.solutions.at(w).size(), std::vector<std::size_t>(du.size())};
    for (std::size_t m = 0; m < du.size(); ++m)
        pi.map[m] = bundle.sigma(w, pas::restrict_values(du[m], bundle.family[u], bundle.family[w]));
    return pi;
}

pas::Values z_map(const GadgetBundle& bundle, std::size_t u, const FunctionTable& g)
{
    const auto& du = bundle.solutions.at(u);
    if (g.arity != du.size())
        throw Error(ErrorKind::ArityMismatch, "Z map needs arity " + std::to_string(du.size()));
    const std::size_t width = pas::size_of(bundle.family[u]);
    pas::Values out(width);
    std::vector<Element> args(du.size());
    for (std::size_t p = 0; p < width; ++p) {
        for (std::size_t m = 0; m < du.size(); ++m)
            args[m] = du[m][p];
        out[p] = g(args);
    }
    return out;
}

std::vector<Element> projection_embedding(const constructions::FreeStructure& free, std::size_t s_size)
{
    std::vector<Element> out;
    for (std::size_t a = 0; a < s_size; ++a) {
        const auto target = minions::projection(s_size, a, free.elements.empty() ? 0 : free.elements.front().in);
        auto it = std::lower_bound(free.elements.begin(), free.elements.end(), target);
        if (it == free.elements.end() || *it != target)
            throw Error(ErrorKind::BadInput, "the minion slice lacks a projection of arity " + std::to_string(s_size));
        out.push_back(static_cast<Element>(it - free.elements.begin()));
    }
    return out;
}

ExtractedSequence extract_pas_sequence(const std::vector<Element>& s, const constructions::FreeStructure& free,
    const WeakMinionHom& xi, const GadgetBundle& bundle)
{
    const std::size_t count = bundle.family.size();
    if (s.size() != count || ! is_homomorphism(s, bundle.gamma, free.structure))
        throw Error(ErrorKind::NotAHomomorphism, "s is not a homomorphism from Γ(J) to the free structure");

    ExtractedSequence out;
    std::vector<const std::vector<FunctionTable>*> images(count);
    for (std::size_t u = 0; u < count; ++u) {
        const auto a = bundle.solutions[u].size();
        if (a == 0)
            throw Error(ErrorKind::BadInput, bundle.member_label(u) + " has no solutions");
        out.t.push_back(restrict_pad(free.elements.at(s[u]), a));
        images[u] = xi.images(out.t.back());
        if (! images[u])
            throw Error(ErrorKind::MissingXiEntry, "ξ has no entry for t(" + bundle.member_label(u) + ")");
    }

    for (std::size_t u = 0; u < count; ++u)
        for (std::size_t w = 0; w < count; ++w) {
            if (! pas::subset(bundle.family[w], bundle.family[u]))
                continue;
            const auto pi = link_map(bundle, u, w);
            ++out.links_checked;
            if (minions::minor_apply(out.t[u], pi) != out.t[w])
                throw Error(ErrorKind::MinorLinkViolation,
                    "t(" + bundle.member_label(w) + ") is not the linked minor of t(" + bundle.member_label(u) + ")");
            for (const auto& g : *images[u]) {
                const auto gm = minions::minor_apply(g, pi);
                for (const auto& h : *images[w])
                    if (gm == h &&
                        pas::restrict_values(z_map(bundle, u, g), bundle.family[u], bundle.family[w]) !=
                            z_map(bundle, w, h))
                        throw Error(ErrorKind::InternalInvariant, "Z maps disagree on " + bundle.member_label(w));
            }
        }

    std::vector<std::string> names;
    for (std::size_t v = 0; v < bundle.instance.domain_size(); ++v)
        names.push_back(bundle.instance.label(static_cast<Element>(v)));
    for (auto k : bundle.schedule) {
        std::map<VarSet, std::vector<pas::Values>> table;
        for (VarSet u : pas::combinations(names.size(), k)) {
            const auto idx = *bundle.index_of(u);
            auto& entry = table[u];
            for (const auto& g : *images[idx])
                entry.push_back(z_map(bundle, idx, g));
        }
        out.sequence.emplace_back(names, bundle.templ.b.domain_size(), k, std::move(table));
    }
    return out;
}

}  // namespace pcsp::weak
