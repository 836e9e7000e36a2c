#include "pcsp/pas/arities.hpp"

#include <algorithm>
#include <limits>

#include "pcsp/errors.hpp"

namespace pcsp::pas {

std::string to_string(ArityRule r)
{
    switch (r) {
    case ArityRule::Degenerate:
        return "degenerate";
    case ArityRule::Base:
        return "base";
    case ArityRule::StripEmpty:
        return "strip-empty";
    case ArityRule::Recursive:
        return "recursive";
    }
    return "?";
}

std::size_t to_size(const BigInt& v, const char* what)
{
    if (v < 0 || v > std::numeric_limits<std::size_t>::max())
        throw Error(ErrorKind::ValueTooLarge, std::string(what) + " does not fit in a machine word");
    return v.convert_to<std::size_t>();
}

ArityCalculator::ArityCalculator(std::size_t n, std::size_t m, std::size_t max_bits) :
    n_(n), m_(m), max_bits_(max_bits)
{
}

void ArityCalculator::check(const BigInt& v, const char* what) const
{
    if (v < 0)
        throw Error(ErrorKind::InternalInvariant, std::string(what) + " became negative");
    if (v != 0 && boost::multiprecision::msb(v) + 1 > max_bits_)
        throw Error(ErrorKind::ValueTooLarge, std::string(what) + " exceeds " + std::to_string(max_bits_) + " bits");
}

BigInt ArityCalculator::binomial(const BigInt& top, const BigInt& bottom) const
{
    if (bottom < 0 || bottom > top)
        return 0;
    BigInt k = std::min<BigInt>(bottom, top - bottom);
    if (k > max_bits_)
        throw Error(ErrorKind::ValueTooLarge, "binomial coefficient too large to evaluate");
    BigInt result = 1;
    const auto steps = k.convert_to<std::size_t>();
    for (std::size_t i = 1; i <= steps; ++i) {
        result = result * (top - steps + i) / i;
        check(result, "binomial coefficient");
    }
    return result;
}

const AritySchedule& ArityCalculator::schedule(const std::vector<std::size_t>& d)
{
    if (d.size() < 2)
        throw Error(ErrorKind::BadInput, "arity schedules need at least two values");
    if (auto it = memo_.find(d); it != memo_.end())
        return it->second;

    AritySchedule s;
    s.n = n_;
    s.m = m_;
    s.values = d;
    const std::size_t r = d.size() - 1;
    const auto positive = std::count_if(d.begin(), d.end(), [](std::size_t v) { return v >= 1; });

    if (positive < 2) {
        s.rule = ArityRule::Degenerate;
        s.k.assign(d.size(), BigInt(m_));
    } else if (d.size() == 2 && d[0] == 1 && d[1] == 1) {
        s.rule = ArityRule::Base;
        s.k = {BigInt(m_), BigInt(1)};
    } else if (d[0] == 0) {
        s.rule = ArityRule::StripEmpty;
        const auto rest = schedule(std::vector<std::size_t>(d.begin() + 1, d.end())).k;
        s.k.push_back(rest.front());
        s.k.insert(s.k.end(), rest.begin(), rest.end());
    } else {
        s.rule = ArityRule::Recursive;
        s.levels.resize(r + 1);
        for (std::size_t i = 1; i <= r; ++i) {
            const auto pair = schedule({d[i], 1}).k;
            s.levels[i].k_outer = pair[0];
            s.levels[i].k_inner = pair[1];
        }
        auto lowered = d;
        --lowered[0];
        const auto p = schedule(lowered).k;
        for (std::size_t i = 0; i <= r; ++i)
            s.levels[i].p = p[i];

        s.k.assign(r + 1, 0);
        BigInt k_next = 0;
        BigInt p_next = 0;
        for (std::size_t i = r + 1; i-- > 0;) {
            auto& lv = s.levels[i];
            lv.l = lv.p + binomial(lv.p, p_next) * (k_next - p_next);
            check(lv.l, "l");
            if (i >= 1) {
                s.k[i] = lv.k_outer + binomial(lv.k_outer, lv.k_inner) * lv.l;
                check(s.k[i], "k");
            }
            k_next = s.k[i];
            p_next = lv.p;
        }
        BigInt inner_sum = 0;
        for (std::size_t i = 1; i <= r; ++i)
            inner_sum += s.levels[i].k_inner;
        if (n_ > 1 && inner_sum * boost::multiprecision::msb(BigInt(n_)) > max_bits_)
            throw Error(ErrorKind::ValueTooLarge, "n^(sum of inner arities) exceeds the bit budget");
        const BigInt power = boost::multiprecision::pow(BigInt(n_), to_size(inner_sum, "exponent"));
        s.k[0] = inner_sum + power * s.levels[0].l;
        check(s.k[0], "k_0");
    }
    return memo_.emplace(d, std::move(s)).first->second;
}

AritySchedule pas_arities(std::size_t n, std::size_t m, const std::vector<std::size_t>& values)
{
    ArityCalculator calc(n, m);
    return calc.schedule(values);
}

}  // namespace pcsp::pas
