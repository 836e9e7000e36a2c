#include "pcsp/minions/polymorphism.hpp"

#include <algorithm>

#include "pcsp/kernels.hpp"

namespace pcsp::minions {

bool is_polymorphism(const FunctionTable& f, const Template& t)
{
    if (f.in != t.a.domain_size() || f.out != t.b.domain_size())
        throw Error(ErrorKind::DomainMismatch, "table is " + std::to_string(f.in) + "→" + std::to_string(f.out) +
                ", template is " + std::to_string(t.a.domain_size()) + "→" + std::to_string(t.b.domain_size()));
    auto cells = bounded_pow(f.in, f.arity, f.table.size());
    if (! cells || *cells != f.table.size())
        throw Error(ErrorKind::DomainMismatch, "table length does not match arity");
    for (std::size_t r = 0; r < t.a.relations().size(); ++r)
        if (! kernels::preserves(f.table, f.in, f.arity, t.a.relation(r), t.b.relation(r)))
            return false;
    return true;
}

ConstraintProblem polymorphism_problem(const Template& t, std::size_t arity, const Caps& caps)
{
    if (arity == 0)
        throw Error(ErrorKind::BadArity, "polymorphism arity must be positive");
    if (arity > caps.arity)
        throw Error(ErrorKind::SizeCapExceeded, "arity " + std::to_string(arity) + " exceeds cap " +
                std::to_string(caps.arity));
    capped_pow(t.a.domain_size(), arity, caps.cells, "polymorphism table");
    return homomorphism_problem(power(t.a, arity, caps), t.b);
}

std::vector<FunctionTable> enumerate_polymorphisms(const Template& t, std::size_t arity, std::size_t limit,
    const Deadline& deadline, const Caps& caps)
{
    const std::size_t in = t.a.domain_size();
    const std::size_t out = t.b.domain_size();
    std::vector<FunctionTable> result;
    for (auto& table : solve_all(polymorphism_problem(t, arity, caps), limit, deadline))
        result.push_back({arity, in, out, std::move(table)});
    return result;
}

MinionSlice MinionSlice::polymorphisms(const Template& t, std::size_t bound, const Deadline& deadline,
    const Caps& caps)
{
    MinionSlice s(t.a.domain_size(), t.b.domain_size());
    s.tables_.resize(bound + 1);
    for (std::size_t k = 1; k <= bound; ++k)
        s.tables_[k] = enumerate_polymorphisms(t, k, 0, deadline, caps);
    return s;
}

MinionSlice MinionSlice::projections(std::size_t domain, std::size_t bound)
{
    MinionSlice s(domain, domain);
    s.tables_.resize(bound + 1);
    for (std::size_t k = 1; k <= bound; ++k) {
        for (std::size_t i = 0; i < k; ++i)
            s.tables_[k].push_back(projection(k, i, domain));
        std::sort(s.tables_[k].begin(), s.tables_[k].end());
    }
    return s;
}

const std::vector<FunctionTable>& MinionSlice::at(std::size_t arity) const
{
    if (arity == 0 || arity >= tables_.size())
        throw Error(ErrorKind::BadArity, "arity " + std::to_string(arity) + " outside slice bound " +
                std::to_string(bound()));
    return tables_[arity];
}

std::optional<std::size_t> MinionSlice::index_of(const FunctionTable& f) const
{
    if (f.arity == 0 || f.arity >= tables_.size() || f.in != in_ || f.out != out_)
        return std::nullopt;
    const auto& v = tables_[f.arity];
    auto it = std::lower_bound(v.begin(), v.end(), f);
    if (it == v.end() || *it != f)
        return std::nullopt;
    return static_cast<std::size_t>(it - v.begin());
}

std::size_t MinionSlice::size() const
{
    std::size_t n = 0;
    for (const auto& v : tables_)
        n += v.size();
    return n;
}

}  // namespace pcsp::minions
