#include "pcsp/minions/derive.hpp"

namespace pcsp::minions {

namespace {

constexpr std::size_t X = 0, Y = 1, Z = 2, W = 3;

void append(std::vector<std::size_t>& v, std::size_t var, std::size_t times)
{
    v.insert(v.end(), times, var);
}

}  // namespace

bool is_cyclic(const FunctionTable& f)
{
    if (f.arity < 2)
        return false;
    return satisfies(named_condition(NamedCondition::Cyclic, f.arity), {f});
}

bool is_area_rare(const FunctionTable& f)
{
    return f.arity == 4 && satisfies(named_condition(NamedCondition::AreaRare), {f});
}

MinorMap cyclic_to_area_rare_map(std::size_t arity)
{
    if (arity < 2)
        throw Error(ErrorKind::BadArity, "cyclic operations have arity ≥ 2");
    const std::size_t k = arity / 3;
    const std::size_t r = arity % 3;
    std::vector<std::size_t> m;
    switch (r) {
    case 0:
        append(m, Y, k);
        append(m, Z, k);
        append(m, W, k);
        break;
    case 1:
        if (k == 0)
            throw Error(ErrorKind::BadArity, "arity 1 has no area-rare derivation");
        append(m, Y, k + 1);
        append(m, W, k - 1);
        append(m, X, 2);
        append(m, Z, k - 1);
        break;
    default:
        append(m, Y, k + 1);
        append(m, W, k);
        append(m, X, 1);
        append(m, Z, k);
        break;
    }
    return {arity, 4, std::move(m)};
}

FunctionTable derive_from_cyclic(const FunctionTable& f)
{
    const auto map = cyclic_to_area_rare_map(f.arity);
    if (! is_cyclic(f))
        throw Error(ErrorKind::NotCyclic, "operation of arity " + std::to_string(f.arity) + " is not cyclic");
    auto g = minor_apply(f, map);
    if (! is_area_rare(g))
        throw Error(ErrorKind::InternalInvariant, "derived operation is not area-rare");
    return g;
}

FunctionTable derive_from_area_rare(const FunctionTable& f, SixAryTarget target)
{
    if (! is_area_rare(f))
        throw Error(ErrorKind::NotAreaRare, "operation does not satisfy the area-rare identity");
    // variables of the 6-ary result: x y z u v w = 0..5
    const MinorMap map = target == SixAryTarget::Siggers ? MinorMap{4, 6, {0, 1, 5, 2}} : MinorMap{4, 6, {4, 1, 0, 2}};
    auto g = minor_apply(f, map);
    const auto cond = named_condition(target == SixAryTarget::Siggers ? NamedCondition::Siggers : NamedCondition::Olsak);
    if (! satisfies(cond, {g}))
        throw Error(ErrorKind::InternalInvariant, "derived 6-ary operation fails its identities");
    return g;
}

}  // namespace pcsp::minions
