#pragma once

#include <optional>
#include <vector>

#include "pcsp/core/search.hpp"
#include "pcsp/core/structure.hpp"

namespace pcsp {

/// A verified map between two structures.
class Homomorphism {
public:
    Homomorphism() = default;

    /// Throws NotAHomomorphism if `map` does not preserve every relation.
    static Homomorphism verified(std::vector<Element> map, const Structure& from, const Structure& to);
    /// For maps produced by the search engine, which are correct by construction.
    static Homomorphism trusted(std::vector<Element> map) { return Homomorphism(std::move(map)); }

    const std::vector<Element>& map() const noexcept { return map_; }
    Element operator()(Element e) const { return map_[e]; }
    std::size_t size() const noexcept { return map_.size(); }

    friend bool operator==(const Homomorphism&, const Homomorphism&) = default;

private:
    explicit Homomorphism(std::vector<Element> map) : map_(std::move(map)) {}
    std::vector<Element> map_;
};

/// A promise template (A, B): similar structures.
struct Template {
    Structure a;
    Structure b;
};

/// Throws SignatureMismatch unless a and b are similar.
Template make_template(Structure a, Structure b);

/// Whether A → B actually holds. Not cached.
bool template_is_promise(const Template& t, const Deadline& deadline = {});

/// Throws ArityOrRangeMismatch when the map is not total into the target or
/// the structures are not similar.
bool is_homomorphism(const std::vector<Element>& map, const Structure& from, const Structure& to);

/// One variable per source element, one constraint per source tuple.
ConstraintProblem homomorphism_problem(const Structure& from, const Structure& to);

/// Search with arc consistency and MRV ordering. DeadlineExceeded is thrown,
/// never reported as absence.
std::optional<Homomorphism> find_homomorphism(const Structure& from, const Structure& to,
    const Deadline& deadline = {});

/// In lexicographic order of the value vector; `limit` 0 = all.
std::vector<Homomorphism> enumerate_homomorphisms(const Structure& from, const Structure& to, std::size_t limit = 0,
    const Deadline& deadline = {});

std::vector<Element> compose(const std::vector<Element>& first, const std::vector<Element>& second);

}  // namespace pcsp
