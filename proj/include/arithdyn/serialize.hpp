#pragma once

#include <string>

#include <json.hpp>

#include "arithdyn/decision.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/symmetry.hpp"

namespace arithdyn {

using Json = nlohmann::ordered_json;

/// 15 significant digits, "-0" printed as "0", "nan"/"inf" spelled out.
std::string format_double(double v);
/// v rounded to 15 significant digits as a JSON number; null when not finite.
Json json_number(double v);

Json to_json(const HeightResult& h);
Json to_json(const Witness& w);
Json to_json(const EscapeWitness& w);
Json to_json(const Verdict& v);
Json to_json(const SymmetryGroup& g);
Json to_json(const SameJuliaResult& r);

}  // namespace arithdyn
