#include "pcsp/core/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "pcsp/kernels.hpp"

namespace pcsp {

namespace {

std::string tuple_text(const std::vector<long long>& t)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < t.size(); ++i)
        os << (i ? "," : "") << t[i];
    os << ')';
    return os.str();
}

}  // namespace

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols))
{
    std::vector<std::string> problems;
    std::set<std::string> seen;
    for (const auto& s : symbols_) {
        if (! seen.insert(s.name).second)
            problems.push_back("duplicate symbol " + s.name);
        if (s.arity == 0)
            problems.push_back("symbol " + s.name + " has arity 0");
    }
    if (! problems.empty())
        throw Error(ErrorKind::MalformedStructure, "invalid signature", std::move(problems));
}

std::optional<std::size_t> Signature::find(const std::string& name) const
{
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name)
            return i;
    return std::nullopt;
}

std::size_t Signature::max_arity() const
{
    std::size_t m = 0;
    for (const auto& s : symbols_)
        m = std::max(m, s.arity);
    return m;
}

Signature make_signature(std::initializer_list<std::pair<const char*, std::size_t>> symbols)
{
    std::vector<Symbol> out;
    for (const auto& [name, arity] : symbols)
        out.push_back({name, arity});
    return Signature(std::move(out));
}

void Relation::add(std::span<const Element> tuple)
{
    if (tuple.size() != arity_)
        throw Error(ErrorKind::ArityMismatch,
            "tuple of length " + std::to_string(tuple.size()) + " added to relation of arity " + std::to_string(arity_));
    data_.insert(data_.end(), tuple.begin(), tuple.end());
}

void Relation::normalize()
{
    const std::size_t n = size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(data_.begin() + a * arity_, data_.begin() + (a + 1) * arity_,
            data_.begin() + b * arity_, data_.begin() + (b + 1) * arity_);
    };
    if (! std::is_sorted(order.begin(), order.end(), less))
        std::sort(order.begin(), order.end(), less);
    std::vector<Element> sorted;
    sorted.reserve(data_.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto first = data_.begin() + order[i] * arity_;
        if (i > 0 && std::equal(first, first + arity_, sorted.end() - arity_))
            continue;
        sorted.insert(sorted.end(), first, first + arity_);
    }
    data_ = std::move(sorted);
}

bool Relation::contains(std::span<const Element> tuple) const
{
    std::size_t lo = 0, hi = size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        auto row = (*this)[mid];
        if (std::lexicographical_compare(row.begin(), row.end(), tuple.begin(), tuple.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == size())
        return false;
    auto row = (*this)[lo];
    return std::equal(row.begin(), row.end(), tuple.begin(), tuple.end());
}

std::vector<Tuple> Relation::tuples() const
{
    std::vector<Tuple> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto t = (*this)[i];
        out.emplace_back(t.begin(), t.end());
    }
    return out;
}

Structure::Structure(std::size_t domain_size, Signature signature, std::vector<Relation> relations,
    std::vector<std::string> labels) :
    domain_size_(domain_size),
    signature_(std::move(signature)),
    relations_(std::move(relations)),
    labels_(std::move(labels))
{
    std::vector<std::string> problems;
    if (relations_.size() != signature_.size())
        problems.push_back("expected " + std::to_string(signature_.size()) + " relations, got " +
            std::to_string(relations_.size()));
    if (! labels_.empty() && labels_.size() != domain_size_)
        problems.push_back("label count " + std::to_string(labels_.size()) + " differs from domain size " +
            std::to_string(domain_size_));
    for (std::size_t i = 0; i < std::min(relations_.size(), signature_.size()); ++i) {
        if (relations_[i].arity() != signature_[i].arity) {
            problems.push_back("relation " + signature_[i].name + " has arity " +
                std::to_string(relations_[i].arity()) + ", signature says " + std::to_string(signature_[i].arity));
            continue;
        }
        for (Element e : relations_[i].data())
            if (e >= domain_size_) {
                problems.push_back("relation " + signature_[i].name + ": entry " + std::to_string(e) +
                    " ≥ domain " + std::to_string(domain_size_));
                break;
            }
    }
    if (! problems.empty())
        throw Error(ErrorKind::MalformedStructure, "invalid structure", std::move(problems));
    for (auto& r : relations_)
        r.normalize();
}

const Relation& Structure::relation(const std::string& name) const
{
    auto i = signature_.find(name);
    if (! i)
        throw Error(ErrorKind::UnknownName, "no relation named " + name);
    return relations_[*i];
}

std::string Structure::label(Element e) const
{
    return labels_.empty() ? std::to_string(e) : labels_.at(e);
}

std::size_t Structure::tuple_count() const
{
    std::size_t n = 0;
    for (const auto& r : relations_)
        n += r.size();
    return n;
}

Structure validate_structure(const RawStructure& raw)
{
    std::vector<std::string> problems;
    if (raw.domain < 0)
        problems.push_back("domain size " + std::to_string(raw.domain) + " is negative");
    const auto n = static_cast<std::size_t>(std::max<long long>(raw.domain, 0));
    if (! raw.labels.empty()) {
        if (raw.labels.size() != n)
            problems.push_back("label count differs from domain size");
        std::set<std::string> seen(raw.labels.begin(), raw.labels.end());
        if (seen.size() != raw.labels.size())
            problems.push_back("duplicate element label");
    }

    std::vector<Symbol> symbols;
    std::set<std::string> names;
    for (const auto& [name, arity] : raw.symbols) {
        if (! names.insert(name).second)
            problems.push_back("duplicate symbol " + name);
        if (arity < 1)
            problems.push_back("symbol " + name + " has arity " + std::to_string(arity) + " < 1");
        symbols.push_back({name, static_cast<std::size_t>(std::max<long long>(arity, 1))});
    }
    for (const auto& [name, tuples] : raw.relations)
        if (! names.count(name))
            problems.push_back("relation " + name + " is not in the signature");

    std::vector<Relation> relations;
    for (const auto& sym : symbols) {
        Relation rel(sym.arity);
        auto it = raw.relations.find(sym.name);
        if (it != raw.relations.end()) {
            for (const auto& t : it->second) {
                if (t.size() != sym.arity) {
                    problems.push_back("arity mismatch: tuple " + tuple_text(t) + " in " + sym.name + " of arity " +
                        std::to_string(sym.arity));
                    continue;
                }
                bool ok = true;
                for (long long e : t)
                    if (e < 0 || static_cast<std::size_t>(e) >= n) {
                        problems.push_back(sym.name + " tuple " + tuple_text(t) + ": entry " + std::to_string(e) +
                            " ≥ domain " + std::to_string(n));
                        ok = false;
                        break;
                    }
                if (! ok)
                    continue;
                Tuple tup(t.begin(), t.end());
                rel.add(tup);
            }
        }
        relations.push_back(std::move(rel));
    }
    if (! problems.empty())
        throw Error(ErrorKind::MalformedStructure, "structure failed validation", std::move(problems));
    return Structure(n, Signature(std::move(symbols)), std::move(relations), raw.labels);
}

std::size_t encode_tuple(std::span<const Element> x, std::size_t base)
{
    std::size_t idx = 0;
    for (Element e : x)
        idx = idx * base + e;
    return idx;
}

void decode_tuple(std::size_t index, std::size_t base, std::span<Element> out)
{
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<Element>(index % base);
        index /= base;
    }
}

Structure power(const Structure& s, std::size_t k, const Caps& caps)
{
    if (k == 0)
        throw Error(ErrorKind::BadParam, "power exponent must be positive");
    const std::size_t n = capped_pow(s.domain_size(), k, caps.cells, "power domain");
    std::vector<Relation> relations;
    for (const auto& rel : s.relations()) {
        capped_pow(rel.size(), k, caps.tuples, "power relation");
        Relation out(rel.arity());
        auto flat = kernels::power_tuples(rel, s.domain_size(), k);
        out.reserve(flat.size() / std::max<std::size_t>(rel.arity(), 1));
        for (std::size_t i = 0; i + rel.arity() <= flat.size(); i += rel.arity())
            out.add(std::span<const Element>(flat.data() + i, rel.arity()));
        relations.push_back(std::move(out));
    }
    return Structure(n, s.signature(), std::move(relations));
}

DisjointUnion disjoint_union(const std::vector<Structure>& parts)
{
    if (parts.empty())
        throw Error(ErrorKind::BadInput, "disjoint union of zero parts");
    DisjointUnion result;
    const Signature& sig = parts.front().signature();
    std::size_t offset = 0;
    std::vector<Relation> relations;
    for (const auto& sym : sig)
        relations.emplace_back(sym.arity);
    bool labelled = false;
    for (const auto& p : parts) {
        if (! p.similar(parts.front()))
            throw Error(ErrorKind::SignatureMismatch, "disjoint union parts have different signatures");
        labelled = labelled || p.has_labels();
    }
    std::vector<std::string> labels;
    Tuple shifted;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        const auto& p = parts[pi];
        result.offsets.push_back(offset);
        for (std::size_t r = 0; r < sig.size(); ++r) {
            const auto& rel = p.relation(r);
            for (std::size_t t = 0; t < rel.size(); ++t) {
                auto tup = rel[t];
                shifted.assign(tup.begin(), tup.end());
                for (auto& e : shifted)
                    e = static_cast<Element>(e + offset);
                relations[r].add(shifted);
            }
        }
        if (labelled)
            for (Element e = 0; e < p.domain_size(); ++e)
                labels.push_back(std::to_string(pi) + ":" + p.label(e));
        offset += p.domain_size();
    }
    result.structure = Structure(offset, sig, std::move(relations), std::move(labels));
    return result;
}

InducedSubstructure induced_substructure(const Structure& s, const std::vector<Element>& subset)
{
    std::vector<Element> members(subset);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (Element e : members)
        if (e >= s.domain_size())
            throw Error(ErrorKind::OutOfRangeElement,
                "element " + std::to_string(e) + " outside domain " + std::to_string(s.domain_size()));

    std::vector<std::int64_t> position(s.domain_size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i)
        position[members[i]] = static_cast<std::int64_t>(i);

    std::vector<Relation> relations;
    Tuple mapped;
    for (const auto& rel : s.relations()) {
        Relation out(rel.arity());
        for (std::size_t t = 0; t < rel.size(); ++t) {
            auto tup = rel[t];
            mapped.clear();
            bool inside = true;
            for (Element e : tup) {
                if (position[e] < 0) {
                    inside = false;
                    break;
                }
                mapped.push_back(static_cast<Element>(position[e]));
            }
            if (inside)
                out.add(mapped);
        }
        relations.push_back(std::move(out));
    }
    std::vector<std::string> labels;
    if (s.has_labels())
        for (Element e : members)
            labels.push_back(s.label(e));
    return {Structure(members.size(), s.signature(), std::move(relations), std::move(labels)), members};
}

}  // namespace pcsp
