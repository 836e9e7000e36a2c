#include "pcsp/constructions/relax.hpp"

namespace pcsp::constructions {

std::optional<RelaxationWitness> relaxation_reduce(const Template& original, const Template& relaxed,
    const Deadline& deadline)
{
    if (! original.a.similar(original.b) || ! original.a.similar(relaxed.a) || ! original.a.similar(relaxed.b))
        throw Error(ErrorKind::SignatureMismatch, "relaxation needs four similar structures");
    auto c_to_a = find_homomorphism(relaxed.a, original.a, deadline);
    if (! c_to_a)
        return std::nullopt;
    auto b_to_d = find_homomorphism(original.b, relaxed.b, deadline);
    if (! b_to_d)
        return std::nullopt;
    return RelaxationWitness{std::move(*c_to_a), std::move(*b_to_d)};
}

}  // namespace pcsp::constructions
