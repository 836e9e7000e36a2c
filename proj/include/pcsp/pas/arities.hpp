#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace pcsp::pas {

using BigInt = boost::multiprecision::cpp_int;

enum class ArityRule {
    Degenerate,   // fewer than two values ≥ 1: every arity is m
    Base,         // values (1,1): (m, 1)
    StripEmpty,   // leading value 0: schedule of the rest, first entry repeated
    Recursive,
};

std::string to_string(ArityRule r);

/// Per-level intermediates of the recursive rule. k_outer/k_inner are the
/// two arities of the schedule for (d_i, 1); unused at level 0.
struct ArityLevel {
    BigInt k_outer;
    BigInt k_inner;
    BigInt p;
    BigInt l;
};

struct AritySchedule {
    std::size_t n = 0;
    std::size_t m = 0;
    std::vector<std::size_t> values;
    std::vector<BigInt> k;
    ArityRule rule = ArityRule::Degenerate;
    std::vector<ArityLevel> levels;   // filled for the recursive rule
};

/// Memoizes sub-schedules by their value vector. Not thread-safe; use one
/// instance per thread.
class ArityCalculator {
public:
    /// Results with more than `max_bits` bits raise ValueTooLarge.
    ArityCalculator(std::size_t n, std::size_t m, std::size_t max_bits = 1U << 20);

    /// Throws BadInput for fewer than two values.
    const AritySchedule& schedule(const std::vector<std::size_t>& values);

private:
    std::size_t n_;
    std::size_t m_;
    std::size_t max_bits_;
    std::map<std::vector<std::size_t>, AritySchedule> memo_;

    BigInt binomial(const BigInt& top, const BigInt& bottom) const;
    void check(const BigInt& v, const char* what) const;
};

AritySchedule pas_arities(std::size_t n, std::size_t m, const std::vector<std::size_t>& values);

/// Converts to size_t, or throws ValueTooLarge.
std::size_t to_size(const BigInt& v, const char* what);

}  // namespace pcsp::pas
