#pragma once

// JSON form of domains, weights and witnesses:
//   {"domain": {"kind": "disk" | "annulus", "inner_radius": r, "punctures": [{"re", "im"}]},
//    "weight": {"base": {"kind": "constant", "value": v} | {"kind": "radial", "alpha": a},
//               "zeros": [{"re", "im", "mult"}], "poles": [...]}}
// Readers throw ValidationError naming the offending path.

#include <string>

#include <json.hpp>

#include "bergman/domain.hpp"
#include "bergman/weight.hpp"
#include "bergman/zero_lab.hpp"

namespace bergman {

using Json = nlohmann::ordered_json;

Json domain_to_json(const DomainSpec& d);
DomainSpec domain_from_json(const Json& j, const std::string& path = "domain");

Json weight_to_json(const WeightSpec& w);
WeightSpec weight_from_json(const Json& j, const std::string& path = "weight");

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, const std::string& path);

Json witness_to_json(const ZeroWitness& w);

/// Throws ValidationError unless j is an object whose keys are all listed.
void require_keys(const Json& j, const std::string& path,
                  std::initializer_list<const char*> allowed);

double number_at(const Json& j, const char* key, const std::string& path);

}  // namespace bergman
