#include "pcsp/core/search.hpp"

#include <algorithm>
#include <bit>
#include <deque>

namespace pcsp {

ConstraintProblem::ConstraintProblem(std::size_t variables, std::size_t values) :
    variables_(variables), values_(values), restrictions_(variables)
{
}

std::size_t ConstraintProblem::add_relation(Relation relation)
{
    relation.normalize();
    relations_.push_back(std::move(relation));
    return relations_.size() - 1;
}

void ConstraintProblem::add_constraint(std::vector<std::uint32_t> scope, std::size_t relation_id)
{
    if (relation_id >= relations_.size())
        throw Error(ErrorKind::InternalInvariant, "constraint refers to unknown relation");
    if (scope.size() != relations_[relation_id].arity())
        throw Error(ErrorKind::ArityMismatch, "constraint scope does not match relation arity");
    for (auto v : scope)
        if (v >= variables_)
            throw Error(ErrorKind::OutOfRangeElement, "constraint scope variable out of range");
    constraints_.push_back({std::move(scope), relation_id});
    finalized_ = false;
}

void ConstraintProblem::restrict(std::uint32_t variable, const std::vector<Element>& allowed)
{
    auto& r = restrictions_.at(variable);
    std::vector<Element> sorted(allowed);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (r.empty()) {
        r = std::move(sorted);
        // an explicitly empty restriction still has to mean "no value"
        if (r.empty())
            r.push_back(static_cast<Element>(values_));
        return;
    }
    std::vector<Element> both;
    std::set_intersection(r.begin(), r.end(), sorted.begin(), sorted.end(), std::back_inserter(both));
    if (both.empty())
        both.push_back(static_cast<Element>(values_));
    r = std::move(both);
}

void ConstraintProblem::finalize()
{
    if (finalized_)
        return;
    std::sort(constraints_.begin(), constraints_.end());
    constraints_.erase(std::unique(constraints_.begin(), constraints_.end()), constraints_.end());
    finalized_ = true;
}

namespace {

class Solver {
public:
    Solver(const ConstraintProblem& problem, const Deadline& deadline, VariableOrder order, std::size_t limit,
        bool first_only) :
        problem_(problem),
        deadline_(deadline),
        order_(order),
        limit_(limit),
        first_only_(first_only),
        words_(std::max<std::size_t>(1, (problem.values() + 63) / 64)),
        var_constraints_(problem.variables())
    {
        const auto& cons = problem_.constraints();
        repeats_.resize(cons.size());
        std::size_t max_arity = 0;
        for (std::size_t c = 0; c < cons.size(); ++c) {
            const auto& scope = cons[c].scope;
            max_arity = std::max(max_arity, scope.size());
            for (std::size_t j = 0; j < scope.size(); ++j) {
                bool first = true;
                for (std::size_t i = 0; i < j; ++i)
                    if (scope[i] == scope[j]) {
                        repeats_[c].emplace_back(i, j);
                        first = false;
                        break;
                    }
                if (first)
                    var_constraints_[scope[j]].push_back(static_cast<std::uint32_t>(c));
            }
        }
        supported_.resize(max_arity * words_);
        in_queue_.assign(cons.size(), 0);
    }

    std::vector<std::vector<Element>> run(SearchStats* stats)
    {
        std::vector<std::uint64_t> domains(problem_.variables() * words_, 0);
        for (std::size_t v = 0; v < problem_.variables(); ++v) {
            const auto& allowed = problem_.restrictions()[v];
            if (allowed.empty()) {
                for (std::size_t x = 0; x < problem_.values(); ++x)
                    set_bit(domains, v, x);
            } else {
                for (Element x : allowed)
                    if (x < problem_.values())
                        set_bit(domains, v, x);
            }
        }
        std::vector<std::uint32_t> all(problem_.constraints().size());
        for (std::size_t c = 0; c < all.size(); ++c)
            all[c] = static_cast<std::uint32_t>(c);

        bool alive = true;
        for (std::size_t v = 0; v < problem_.variables(); ++v)
            if (size(domains, v) == 0)
                alive = false;
        if (alive && propagate(domains, all))
            search(domains);
        if (stats) {
            stats->nodes += nodes_;
            stats->revisions += revisions_;
        }
        return std::move(solutions_);
    }

private:
    const ConstraintProblem& problem_;
    const Deadline& deadline_;
    VariableOrder order_;
    std::size_t limit_;
    bool first_only_;
    std::size_t words_;
    std::vector<std::vector<std::uint32_t>> var_constraints_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> repeats_;
    std::vector<std::uint64_t> supported_;
    std::vector<char> in_queue_;
    std::vector<std::vector<Element>> solutions_;
    std::uint64_t nodes_ = 0;
    std::uint64_t revisions_ = 0;

    std::uint64_t* row(std::vector<std::uint64_t>& d, std::size_t v) const { return d.data() + v * words_; }
    const std::uint64_t* row(const std::vector<std::uint64_t>& d, std::size_t v) const
    {
        return d.data() + v * words_;
    }
    void set_bit(std::vector<std::uint64_t>& d, std::size_t v, std::size_t x) const
    {
        row(d, v)[x >> 6] |= std::uint64_t{1} << (x & 63);
    }
    bool test(const std::vector<std::uint64_t>& d, std::size_t v, std::size_t x) const
    {
        return (row(d, v)[x >> 6] >> (x & 63)) & 1U;
    }
    std::size_t size(const std::vector<std::uint64_t>& d, std::size_t v) const
    {
        std::size_t n = 0;
        const auto* r = row(d, v);
        for (std::size_t w = 0; w < words_; ++w)
            n += static_cast<std::size_t>(std::popcount(r[w]));
        return n;
    }

    // Generalized arc consistency over the worklist seeded with `seed`.
    bool propagate(std::vector<std::uint64_t>& d, const std::vector<std::uint32_t>& seed)
    {
        std::deque<std::uint32_t> queue;
        for (auto c : seed)
            if (! in_queue_[c]) {
                in_queue_[c] = 1;
                queue.push_back(c);
            }
        bool ok = true;
        while (! queue.empty()) {
            const auto c = queue.front();
            queue.pop_front();
            in_queue_[c] = 0;
            if (! ok)
                continue;
            ++revisions_;
            const auto& con = problem_.constraints()[c];
            const auto& rel = problem_.relation(con.relation);
            const std::size_t k = con.scope.size();
            std::fill(supported_.begin(), supported_.begin() + k * words_, 0);
            for (std::size_t t = 0; t < rel.size(); ++t) {
                auto tup = rel[t];
                bool valid = true;
                for (std::size_t j = 0; j < k && valid; ++j)
                    valid = test(d, con.scope[j], tup[j]);
                for (const auto& [i, j] : repeats_[c])
                    valid = valid && tup[i] == tup[j];
                if (! valid)
                    continue;
                for (std::size_t j = 0; j < k; ++j)
                    supported_[j * words_ + (tup[j] >> 6)] |= std::uint64_t{1} << (tup[j] & 63);
            }
            for (std::size_t j = 0; j < k && ok; ++j) {
                auto* r = row(d, con.scope[j]);
                bool changed = false;
                bool empty = true;
                for (std::size_t w = 0; w < words_; ++w) {
                    const auto next = r[w] & supported_[j * words_ + w];
                    changed = changed || next != r[w];
                    empty = empty && next == 0;
                    r[w] = next;
                }
                if (empty) {
                    ok = false;
                    break;
                }
                if (changed)
                    for (auto other : var_constraints_[con.scope[j]])
                        if (other != c && ! in_queue_[other]) {
                            in_queue_[other] = 1;
                            queue.push_back(other);
                        }
            }
        }
        return ok;
    }

    std::optional<std::size_t> choose(const std::vector<std::uint64_t>& d) const
    {
        std::optional<std::size_t> best;
        std::size_t best_size = 0;
        for (std::size_t v = 0; v < problem_.variables(); ++v) {
            const auto s = size(d, v);
            if (s <= 1)
                continue;
            if (order_ == VariableOrder::Lexicographic)
                return v;
            if (! best || s < best_size) {
                best = v;
                best_size = s;
            }
        }
        return best;
    }

    // Returns true once enough solutions have been collected.
    bool search(const std::vector<std::uint64_t>& d)
    {
        if ((++nodes_ & 255U) == 0)
            deadline_.check();
        auto var = choose(d);
        if (! var) {
            std::vector<Element> solution(problem_.variables());
            for (std::size_t v = 0; v < problem_.variables(); ++v) {
                const auto* r = row(d, v);
                for (std::size_t w = 0; w < words_; ++w)
                    if (r[w]) {
                        solution[v] = static_cast<Element>(w * 64 + static_cast<std::size_t>(std::countr_zero(r[w])));
                        break;
                    }
            }
            solutions_.push_back(std::move(solution));
            return first_only_ || (limit_ != 0 && solutions_.size() >= limit_);
        }
        std::vector<std::uint64_t> child;
        for (std::size_t x = 0; x < problem_.values(); ++x) {
            if (! test(d, *var, x))
                continue;
            child = d;
            auto* r = row(child, *var);
            std::fill(r, r + words_, 0);
            set_bit(child, *var, x);
            if (propagate(child, var_constraints_[*var]) && search(child))
                return true;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<Element>> solve_first(ConstraintProblem problem, const Deadline& deadline,
    VariableOrder order, SearchStats* stats)
{
    problem.finalize();
    deadline.check();
    Solver solver(problem, deadline, order, 1, true);
    auto found = solver.run(stats);
    if (found.empty())
        return std::nullopt;
    return std::move(found.front());
}

std::vector<std::vector<Element>> solve_all(ConstraintProblem problem, std::size_t limit, const Deadline& deadline,
    SearchStats* stats)
{
    problem.finalize();
    deadline.check();
    Solver solver(problem, deadline, VariableOrder::Lexicographic, limit, false);
    return solver.run(stats);
}

}  // namespace pcsp
