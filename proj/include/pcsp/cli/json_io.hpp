#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pcsp/constructions/pp_power.hpp"
#include "pcsp/minions/condition.hpp"
#include "pcsp/pas/arities.hpp"
#include "pcsp/pas/pas.hpp"
#include "pcsp/weak/weak_hom.hpp"

namespace pcsp::cli {

/// std::map-backed, so keys always serialize sorted.
using Json = nlohmann::json;

/// ParseError carries line and column; IOError if the file cannot be read.
Json read_json_file(const std::string& path);
Json parse_json(const std::string& text, const std::string& origin = "<input>");
std::string dump(const Json& j);

Json to_json(const Structure& s);
/// Every violation is collected into one ValidationError.
Structure structure_from_json(const Json& j);

Json to_json(const minions::FunctionTable& f);
minions::FunctionTable table_from_json(const Json& j);

Json to_json(const minions::MinorCondition& c);
minions::MinorCondition condition_from_json(const Json& j);

Json to_json(const constructions::PPPowerDef& def);
constructions::PPPowerDef pp_power_from_json(const Json& j);

Json to_json(const pas::PAS& p);
pas::PAS pas_from_json(const Json& j);

Json to_json(const pas::AritySchedule& s);
/// "k_0 k_1 ..." followed by one line per recorded intermediate.
std::string schedule_text(const pas::AritySchedule& s);
std::string to_string(const pas::BigInt& v);

Json to_json(const weak::WeakMinionHom& xi);
/// A list of {"src", "imgs"}; d defaults to the largest image count, r to 1.
weak::WeakMinionHom xi_from_json(const Json& j);

/// Accepts {"map": [...]}, a report with "witness": {"map": [...]}, or a bare list.
std::vector<Element> map_from_json(const Json& j);

}  // namespace pcsp::cli
