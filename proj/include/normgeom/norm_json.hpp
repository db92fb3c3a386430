#pragma once

#include "normgeom/space.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace normgeom {

/// Malformed or unknown configuration content. The message names the
/// offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Schema:
///   {"kind": "pnorm"|"weighted_pnorm"|"polytope"|"blend",
///    "p": number|"inf", "weights": [..], "functionals": [[..], ..],
///    "blend": {"left": {..}, "right": {..}, "t": number}, "dim": n}
/// Unknown fields raise ConfigError.
NormSpec norm_spec_from_json(const nlohmann::json& doc);
nlohmann::json norm_spec_to_json(const NormSpec& spec, Index dim);

/// Reads "dim" together with the spec and constructs the validated Space.
Space space_from_json(const nlohmann::json& doc);
nlohmann::json space_to_json(const Space& space);

}  // namespace normgeom
