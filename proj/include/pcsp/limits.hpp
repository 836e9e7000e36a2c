#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>

#include "pcsp/errors.hpp"

namespace pcsp {

/// Wall-clock budget for a search. A default-constructed deadline never
/// expires. Running past a deadline is always an error, never "no answer".
class Deadline {
public:
    using Clock = std::chrono::steady_clock;

    Deadline() = default;

    static Deadline after(std::chrono::duration<double> budget)
    {
        Deadline d;
        d.at_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(budget);
        return d;
    }

    static Deadline after_seconds(double seconds) { return after(std::chrono::duration<double>(seconds)); }

    bool unlimited() const noexcept { return ! at_.has_value(); }
    bool expired() const { return at_ && Clock::now() >= *at_; }

    void check(const char* what = "search") const
    {
        if (expired())
            throw Error(ErrorKind::DeadlineExceeded, std::string(what) + " exceeded its deadline");
    }

private:
    std::optional<Clock::time_point> at_;
};

/// Size limits. Exceeding any of them is a hard error.
struct Caps {
    std::size_t cells = 1'000'000;     // function-table cells, domain elements of derived structures
    std::size_t arity = 8;             // largest function arity materialized
    std::size_t tuples = 20'000'000;   // tuples materialized in one derived relation
    std::size_t chains = 10'000'000;   // chains walked by consistency / fragment checks
};

/// base^exp, or nullopt once the value passes `limit`.
inline std::optional<std::size_t> bounded_pow(std::size_t base, std::size_t exp, std::size_t limit)
{
    std::size_t result = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && result > limit / base)
            return std::nullopt;
        result *= base;
    }
    if (result > limit)
        return std::nullopt;
    return result;
}

inline std::size_t capped_pow(std::size_t base, std::size_t exp, std::size_t limit, const char* what)
{
    auto v = bounded_pow(base, exp, limit);
    if (! v)
        throw Error(ErrorKind::SizeCapExceeded, std::string(what) + ": " + std::to_string(base) + "^" +
                std::to_string(exp) + " exceeds cap " + std::to_string(limit));
    return *v;
}

}  // namespace pcsp
