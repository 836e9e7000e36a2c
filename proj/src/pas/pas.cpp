#include "pcsp/pas/pas.hpp"

#include <algorithm>
#include <set>

#include "pcsp/core/search.hpp"

namespace pcsp::pas {

namespace {

void sort_unique(std::vector<Values>& v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

std::vector<Values> restrict_all(const std::vector<Values>& values, VarSet from, VarSet to)
{
    std::vector<Values> out;
    out.reserve(values.size());
    for (const auto& v : values)
        out.push_back(restrict_values(v, from, to));
    sort_unique(out);
    return out;
}

bool intersects(const std::vector<Values>& a, const std::vector<Values>& b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else
            return true;
    }
    return false;
}

Values on(const Values& f, VarSet u)
{
    Values out;
    for (std::size_t v = 0; v < f.size(); ++v)
        if ((u >> v) & 1U)
            out.push_back(f[v]);
    return out;
}

void same_space(const PAS& a, const PAS& b)
{
    if (a.vars() != b.vars() || a.n() != b.n())
        throw Error(ErrorKind::BadInput, "PAS do not share the variable set and value domain");
}

}  // namespace

std::vector<VarSet> combinations(std::size_t n, std::size_t k)
{
    std::vector<VarSet> out;
    if (k > n)
        return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        VarSet s = 0;
        for (auto i : idx)
            s |= VarSet{1} << i;
        out.push_back(s);
        std::size_t i = k;
        while (i-- > 0)
            if (idx[i] < n - k + i)
                break;
        if (i == static_cast<std::size_t>(-1))
            break;
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<VarSet> supersets(VarSet base, std::size_t n, std::size_t k)
{
    const std::size_t have = size_of(base);
    std::vector<VarSet> out;
    if (have > k)
        return out;
    std::vector<std::size_t> rest;
    for (std::size_t v = 0; v < n; ++v)
        if (! ((base >> v) & 1U))
            rest.push_back(v);
    for (VarSet pick : combinations(rest.size(), k - have)) {
        VarSet s = base;
        for (std::size_t i = 0; i < rest.size(); ++i)
            if ((pick >> i) & 1U)
                s |= VarSet{1} << rest[i];
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Values restrict_values(const Values& values, VarSet from, VarSet to)
{
    Values out;
    std::size_t pos = 0;
    for (std::size_t v = 0; v < 64 && (from >> v); ++v) {
        if (! ((from >> v) & 1U))
            continue;
        if ((to >> v) & 1U)
            out.push_back(values.at(pos));
        ++pos;
    }
    return out;
}

PAS::PAS(std::vector<std::string> vars, std::size_t n, std::size_t k, std::map<VarSet, std::vector<Values>> table) :
    vars_(std::move(vars)), n_(n), k_(k)
{
    if (vars_.size() > 64)
        throw Error(ErrorKind::BadInput, "at most 64 variables are supported");
    if (std::set<std::string>(vars_.begin(), vars_.end()).size() != vars_.size())
        throw Error(ErrorKind::BadInput, "duplicate variable name");
    const VarSet all = vars_.size() == 64 ? ~VarSet{0} : (VarSet{1} << vars_.size()) - 1;
    for (auto& [u, fs] : table) {
        if (! subset(u, all))
            throw Error(ErrorKind::BadInput, "key mentions an unknown variable");
        if (size_of(u) != k)
            throw Error(ErrorKind::BadInput, "key of size " + std::to_string(size_of(u)) + " in a " +
                    std::to_string(k) + "-PAS");
        for (const auto& f : fs) {
            if (f.size() != k)
                throw Error(ErrorKind::BadInput, "assignment length differs from its key");
            for (auto x : f)
                if (x >= n)
                    throw Error(ErrorKind::BadInput, "value " + std::to_string(x) + " ≥ n = " + std::to_string(n));
        }
        sort_unique(fs);
        if (! fs.empty())
            table_.emplace(u, std::move(fs));
    }
}

const std::vector<Values>& PAS::at(VarSet u) const
{
    static const std::vector<Values> empty;
    auto it = table_.find(u);
    return it == table_.end() ? empty : it->second;
}

PAS restrictions_pas(std::vector<std::string> vars, std::size_t n, std::size_t k, const std::vector<Values>& maps)
{
    std::map<VarSet, std::vector<Values>> table;
    for (VarSet u : combinations(vars.size(), k))
        for (const auto& g : maps)
            table[u].push_back(on(g, u));
    return PAS(std::move(vars), n, k, std::move(table));
}

std::size_t pas_value(const PAS& pas)
{
    std::size_t v = 0;
    for (const auto& [_, fs] : pas.table())
        v = std::max(v, fs.size());
    return v;
}

bool is_m_solution(const Values& f, const PAS& pas, std::size_t m)
{
    if (f.size() != pas.var_count())
        throw Error(ErrorKind::BadInput, "map is not total on V");
    if (pas.var_count() < m)
        return true;
    if (pas.k() < m)
        return false;
    for (VarSet u : combinations(pas.var_count(), m)) {
        const auto want = on(f, u);
        bool found = false;
        for (const auto& [w, fs] : pas.table()) {
            if (! subset(u, w))
                continue;
            for (const auto& g : fs)
                if (restrict_values(g, w, u) == want) {
                    found = true;
                    break;
                }
            if (found)
                break;
        }
        if (! found)
            return false;
    }
    return true;
}

std::optional<Values> find_m_solution(const PAS& pas, std::size_t m, const Deadline& deadline, const Caps& caps)
{
    const std::size_t vars = pas.var_count();
    if (vars < m)
        return pas.n() > 0 || vars == 0 ? std::optional<Values>(Values(vars, 0)) : std::nullopt;
    if (pas.k() < m)
        return std::nullopt;
    const auto subsets = combinations(vars, m);
    if (subsets.size() > caps.tuples)
        throw Error(ErrorKind::SizeCapExceeded, "too many " + std::to_string(m) + "-subsets");

    ConstraintProblem problem(vars, pas.n());
    for (VarSet u : subsets) {
        Relation allowed(std::max<std::size_t>(m, 1));
        for (const auto& [w, fs] : pas.table()) {
            if (! subset(u, w))
                continue;
            for (const auto& g : fs) {
                if (m > 0)
                    allowed.add(restrict_values(g, w, u));
                else
                    allowed.add({0});
            }
        }
        if (m == 0) {
            // nothing to constrain besides "some I(W) is nonempty"
            if (allowed.empty())
                return std::nullopt;
            continue;
        }
        std::vector<std::uint32_t> scope;
        for (std::size_t v = 0; v < vars; ++v)
            if ((u >> v) & 1U)
                scope.push_back(static_cast<std::uint32_t>(v));
        problem.add_constraint(std::move(scope), problem.add_relation(std::move(allowed)));
    }
    auto found = solve_first(std::move(problem), deadline);
    if (found && ! is_m_solution(*found, pas, m))
        throw Error(ErrorKind::InternalInvariant, "m-solution search returned a non-solution");
    return found;
}

void validate_sequence(const std::vector<PAS>& seq)
{
    for (std::size_t i = 1; i < seq.size(); ++i) {
        same_space(seq[0], seq[i]);
        if (seq[i].k() > seq[i - 1].k())
            throw Error(ErrorKind::BadInput, "arities must be non-increasing");
    }
}

std::optional<std::vector<VarSet>> find_inconsistent_chain(const std::vector<PAS>& seq, const Caps& caps)
{
    validate_sequence(seq);
    if (seq.empty())
        return std::nullopt;
    const std::size_t vars = seq[0].var_count();
    if (vars < seq[0].k())
        return std::nullopt;

    std::vector<VarSet> chain(seq.size());
    std::size_t visited = 0;
    const VarSet all = vars == 64 ? ~VarSet{0} : (VarSet{1} << vars) - 1;

    // true once every chain extending chain[0..level-1] has an agreeing pair
    auto descend = [&](auto&& self, std::size_t level, VarSet parent) -> bool {
        std::vector<VarSet> options;
        for (VarSet c : combinations(size_of(parent), seq[level].k())) {
            // map the combination of parent's members back to variables
            VarSet s = 0;
            std::size_t pos = 0;
            for (std::size_t v = 0; v < vars; ++v)
                if ((parent >> v) & 1U) {
                    if ((c >> pos) & 1U)
                        s |= VarSet{1} << v;
                    ++pos;
                }
            options.push_back(s);
        }
        std::sort(options.begin(), options.end());
        for (VarSet u : options) {
            if (++visited > caps.chains)
                throw Error(ErrorKind::ChainSpaceCapExceeded, "consistency check passed " +
                        std::to_string(caps.chains) + " chain prefixes");
            chain[level] = u;
            bool agreed = false;
            for (std::size_t i = 0; i < level && ! agreed; ++i)
                agreed = intersects(restrict_all(seq[i].at(chain[i]), chain[i], u), seq[level].at(u));
            if (agreed)
                continue;
            if (level + 1 == seq.size())
                return false;
            if (! self(self, level + 1, u))
                return false;
        }
        return true;
    };
    if (descend(descend, 0, all))
        return std::nullopt;
    return chain;
}

bool is_consistent(const std::vector<PAS>& seq, const Caps& caps)
{
    return ! find_inconsistent_chain(seq, caps).has_value();
}

bool is_obstacle(const PartialAssignment& f, const PAS& pas, std::size_t l)
{
    const std::size_t vars = pas.var_count();
    for (VarSet w : combinations(vars, l)) {
        const VarSet need = f.domain | w;
        bool found = false;
        for (const auto& [u, gs] : pas.table()) {
            if (! subset(need, u))
                continue;
            for (const auto& g : gs)
                if (restrict_values(g, u, f.domain) == f.values) {
                    found = true;
                    break;
                }
            if (found)
                break;
        }
        if (! found)
            return false;
    }
    return true;
}

bool is_admissible(const PartialAssignment& f, const PAS& pas, std::size_t l)
{
    const std::size_t vars = pas.var_count();
    for (VarSet w : combinations(vars, l)) {
        bool all = true;
        for (VarSet u : supersets(f.domain | w, vars, pas.k())) {
            bool found = false;
            for (const auto& g : pas.at(u))
                if (restrict_values(g, u, f.domain) == f.values) {
                    found = true;
                    break;
                }
            if (! found) {
                all = false;
                break;
            }
        }
        if (all)
            return true;
    }
    return false;
}

bool is_refinement(const PAS& j, const PAS& i)
{
    same_space(j, i);
    if (j.k() > i.k())
        return false;
    for (VarSet u : combinations(j.var_count(), j.k())) {
        const auto& want = j.at(u);
        bool found = false;
        for (VarSet big : supersets(u, i.var_count(), i.k()))
            if (restrict_all(i.at(big), big, u) == want) {
                found = true;
                break;
            }
        if (! found)
            return false;
    }
    return true;
}

}  // namespace pcsp::pas
