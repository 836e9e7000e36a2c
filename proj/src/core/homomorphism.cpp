#include "pcsp/core/homomorphism.hpp"

#include "pcsp/kernels.hpp"

namespace pcsp {

Homomorphism Homomorphism::verified(std::vector<Element> map, const Structure& from, const Structure& to)
{
    if (! is_homomorphism(map, from, to))
        throw Error(ErrorKind::NotAHomomorphism, "map does not preserve all relations");
    return Homomorphism(std::move(map));
}

Template make_template(Structure a, Structure b)
{
    if (! a.similar(b))
        throw Error(ErrorKind::SignatureMismatch, "template structures are not similar");
    return {std::move(a), std::move(b)};
}

bool template_is_promise(const Template& t, const Deadline& deadline)
{
    return find_homomorphism(t.a, t.b, deadline).has_value();
}

bool is_homomorphism(const std::vector<Element>& map, const Structure& from, const Structure& to)
{
    if (! from.similar(to))
        throw Error(ErrorKind::ArityOrRangeMismatch, "structures are not similar");
    if (map.size() != from.domain_size())
        throw Error(ErrorKind::ArityOrRangeMismatch, "map has " + std::to_string(map.size()) +
                " entries, source domain has " + std::to_string(from.domain_size()));
    for (Element e : map)
        if (e >= to.domain_size())
            throw Error(ErrorKind::ArityOrRangeMismatch,
                "map value " + std::to_string(e) + " outside target domain " + std::to_string(to.domain_size()));
    for (std::size_t r = 0; r < from.relations().size(); ++r)
        if (kernels::count_violations(map, from.relation(r), to.relation(r)) != 0)
            return false;
    return true;
}

ConstraintProblem homomorphism_problem(const Structure& from, const Structure& to)
{
    if (! from.similar(to))
        throw Error(ErrorKind::SignatureMismatch, "structures are not similar");
    ConstraintProblem problem(from.domain_size(), to.domain_size());
    for (std::size_t r = 0; r < from.relations().size(); ++r) {
        const auto& src = from.relation(r);
        if (src.empty())
            continue;
        const auto id = problem.add_relation(to.relation(r));
        for (std::size_t t = 0; t < src.size(); ++t) {
            auto tup = src[t];
            problem.add_constraint(std::vector<std::uint32_t>(tup.begin(), tup.end()), id);
        }
    }
    return problem;
}

std::optional<Homomorphism> find_homomorphism(const Structure& from, const Structure& to, const Deadline& deadline)
{
    auto found = solve_first(homomorphism_problem(from, to), deadline);
    if (! found)
        return std::nullopt;
    return Homomorphism::trusted(std::move(*found));
}

std::vector<Homomorphism> enumerate_homomorphisms(const Structure& from, const Structure& to, std::size_t limit,
    const Deadline& deadline)
{
    std::vector<Homomorphism> out;
    for (auto& m : solve_all(homomorphism_problem(from, to), limit, deadline))
        out.push_back(Homomorphism::trusted(std::move(m)));
    return out;
}

std::vector<Element> compose(const std::vector<Element>& first, const std::vector<Element>& second)
{
    std::vector<Element> out(first.size());
    for (std::size_t i = 0; i < first.size(); ++i)
        out[i] = second.at(first[i]);
    return out;
}

}  // namespace pcsp
