#pragma once

#include "pcsp/minions/condition.hpp"

namespace pcsp::minions {

bool is_cyclic(const FunctionTable& f);
bool is_area_rare(const FunctionTable& f);

/// 4-ary area-rare operation from a cyclic one of arity 3k+r. Throws
/// BadArity for arity < 2 or arity 1 mod 3 with k = 0, NotCyclic otherwise.
FunctionTable derive_from_cyclic(const FunctionTable& f);

/// The minor map (into 4 variables x,y,z,w) used for a cyclic arity.
MinorMap cyclic_to_area_rare_map(std::size_t arity);

enum class SixAryTarget { Siggers, Olsak };

/// 6-ary Siggers or Olšák operation from an area-rare one. Throws NotAreaRare.
FunctionTable derive_from_area_rare(const FunctionTable& f, SixAryTarget target);

}  // namespace pcsp::minions
