#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcsp/limits.hpp"

namespace pcsp {

/// Elements of a finite domain are 0..n-1.
using Element = std::uint32_t;
using Tuple = std::vector<Element>;

struct Symbol {
    std::string name;
    std::size_t arity = 1;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

class Signature {
public:
    Signature() = default;
    /// Throws MalformedStructure on duplicate names or zero arity.
    explicit Signature(std::vector<Symbol> symbols);

    std::size_t size() const noexcept { return symbols_.size(); }
    const Symbol& operator[](std::size_t i) const { return symbols_[i]; }
    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    std::optional<std::size_t> find(const std::string& name) const;
    std::size_t max_arity() const;

    auto begin() const { return symbols_.begin(); }
    auto end() const { return symbols_.end(); }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Symbol> symbols_;
};

/// A set of tuples of a fixed arity, stored flat. After normalize() the tuples
/// are sorted lexicographically and unique, which is what contains() needs.
class Relation {
public:
    explicit Relation(std::size_t arity = 1) : arity_(arity) {}

    std::size_t arity() const noexcept { return arity_; }
    std::size_t size() const noexcept { return arity_ == 0 ? 0 : data_.size() / arity_; }
    bool empty() const noexcept { return data_.empty(); }

    std::span<const Element> operator[](std::size_t i) const
    {
        return {data_.data() + i * arity_, arity_};
    }

    void add(std::span<const Element> tuple);
    void add(std::initializer_list<Element> tuple) { add(std::span<const Element>(tuple.begin(), tuple.size())); }
    void reserve(std::size_t tuples) { data_.reserve(tuples * arity_); }

    void normalize();
    bool contains(std::span<const Element> tuple) const;

    const std::vector<Element>& data() const noexcept { return data_; }
    std::vector<Tuple> tuples() const;

    friend bool operator==(const Relation&, const Relation&) = default;

private:
    std::size_t arity_;
    std::vector<Element> data_;
};

/// Finite relational structure with domain {0..n-1}. Immutable once built;
/// the constructor validates and normalizes the relations.
class Structure {
public:
    Structure() = default;
    Structure(std::size_t domain_size, Signature signature, std::vector<Relation> relations,
        std::vector<std::string> labels = {});

    std::size_t domain_size() const noexcept { return domain_size_; }
    const Signature& signature() const noexcept { return signature_; }
    const std::vector<Relation>& relations() const noexcept { return relations_; }
    const Relation& relation(std::size_t i) const { return relations_[i]; }
    const Relation& relation(const std::string& name) const;
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool has_labels() const noexcept { return ! labels_.empty(); }
    std::string label(Element e) const;

    bool similar(const Structure& other) const { return signature_ == other.signature_; }
    std::size_t tuple_count() const;

    friend bool operator==(const Structure&, const Structure&) = default;

private:
    std::size_t domain_size_ = 0;
    Signature signature_;
    std::vector<Relation> relations_;
    std::vector<std::string> labels_;
};

/// Unvalidated description, as read from a file or typed in a test.
struct RawStructure {
    long long domain = 0;
    std::vector<std::string> labels;
    std::vector<std::pair<std::string, long long>> symbols;
    std::map<std::string, std::vector<std::vector<long long>>> relations;
};

/// Collects every violation before failing with MalformedStructure.
Structure validate_structure(const RawStructure& raw);

Signature make_signature(std::initializer_list<std::pair<const char*, std::size_t>> symbols);

/// k-th power. Element (a_0..a_{k-1}) is encoded row-major with coordinate 0
/// most significant.
Structure power(const Structure& s, std::size_t k, const Caps& caps = {});

struct DisjointUnion {
    Structure structure;
    std::vector<std::size_t> offsets;   // part p's element e becomes offsets[p] + e

    Element inject(std::size_t part, Element e) const { return static_cast<Element>(offsets[part] + e); }
};

DisjointUnion disjoint_union(const std::vector<Structure>& parts);

struct InducedSubstructure {
    Structure structure;
    std::vector<Element> original;   // new index -> element of the source
};

/// Elements are re-indexed in ascending order of the subset.
InducedSubstructure induced_substructure(const Structure& s, const std::vector<Element>& subset);

/// Row-major encoding shared by powers and function tables.
std::size_t encode_tuple(std::span<const Element> x, std::size_t base);
void decode_tuple(std::size_t index, std::size_t base, std::span<Element> out);

}  // namespace pcsp
