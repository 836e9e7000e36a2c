#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "pcsp/constructions/free_structure.hpp"
#include "pcsp/kernels.hpp"
#include "pcsp/pas/arities.hpp"
#include "pcsp/pas/pas.hpp"
#include "pcsp/weak/weak_hom.hpp"

namespace pcsp::weak {

using pas::VarSet;

/// pas_arities(|D|, max arity of C, (d, ..., d)) with r + 1 entries.
pas::AritySchedule dr_arity_schedule(const Template& t, std::size_t d, std::size_t r);

/// A partial function on S, as (source, image) pairs sorted by source.
using PartialFunction = std::vector<std::pair<Element, Element>>;

/// "pf:s0>t0,s1>t1,..."; the empty function is "pf:".
std::string partial_function_name(const PartialFunction& q);
PartialFunction parse_partial_function(const std::string& name);

struct GadgetBundle {
    Structure instance;
    Template templ;
    std::vector<std::size_t> schedule;          // k_0 .. k_r
    std::vector<VarSet> family;                 // the index family, Γ's domain in order
    /// D_U for each family member: homomorphisms J|_U → C in lex order,
    /// values listed by increasing variable. σ_U is the position here.
    std::vector<std::vector<pas::Values>> solutions;
    std::size_t s_size = 0;                     // |C|^{k_0}
    Structure gamma;                            // Γ(J), symbols sorted by name
    std::vector<PartialFunction> functions;     // per Γ symbol

    std::optional<std::size_t> index_of(VarSet u) const;
    /// σ_U(f); throws InternalInvariant if f ∉ D_U.
    std::size_t sigma(std::size_t member, const pas::Values& f) const;
    std::string member_label(std::size_t member) const;
};

/// Builds Γ(J). Throws BadInput if |V| > 64 or |V| < k_0, SizeCapExceeded
/// past the caps. D_U enumeration runs on `backend`; the result does not
/// depend on it.
GadgetBundle dr_reduce_instance(const Structure& instance, const Template& templ, const std::vector<std::size_t>& schedule,
    const Deadline& deadline = {}, const Caps& caps = {}, kernels::Backend backend = kernels::default_backend());

/// The gadget structure S restricted to the symbols Γ(J) uses: domain
/// |C|^{k_0}, and each symbol's extension is its partial function's graph.
Structure gadget_structure(const GadgetBundle& bundle);

/// U ↦ σ_U(h|_U), verified against the gadget structure (NotAHomomorphism).
Homomorphism canonical_gadget_hom(const std::vector<Element>& h, const GadgetBundle& bundle);

/// The a-ary minor of sU along i ↦ i for i < a and i ↦ 0 otherwise.
/// Requires 1 ≤ a ≤ arity(sU) (BadArity).
FunctionTable restrict_pad(const FunctionTable& sU, std::size_t a);

/// π_{U,W}: m ↦ σ_W(D_U[m]|_W).
MinorMap link_map(const GadgetBundle& bundle, std::size_t u, std::size_t w);

/// Z_U(g): u ↦ g(D_U[0](u), ..., D_U[a-1](u)), values by increasing variable.
pas::Values z_map(const GadgetBundle& bundle, std::size_t u, const FunctionTable& g);

/// a ↦ the a-th projection of arity |S|, as elements of the free structure.
std::vector<Element> projection_embedding(const constructions::FreeStructure& free, std::size_t s_size);

struct ExtractedSequence {
    std::vector<pas::PAS> sequence;      // I_0 .. I_r
    std::vector<FunctionTable> t;        // t(U) per family member
    std::size_t links_checked = 0;
};

/// Soundness-side extraction from s: Γ(J) → F_M(S). Throws
/// NotAHomomorphism, MissingXiEntry, MinorLinkViolation.
ExtractedSequence extract_pas_sequence(const std::vector<Element>& s, const constructions::FreeStructure& free,
    const WeakMinionHom& xi, const GadgetBundle& bundle);

}  // namespace pcsp::weak
