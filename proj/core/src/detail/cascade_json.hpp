#pragma once

#include <json.hpp>

#include "detail/json_fields.hpp"
#include "lifeloop/predict/cascade.hpp"

namespace lifeloop::detail {

/// Parses a cascade object, recording schema errors under `prefix`.
predict::ParameterCascade cascade_from_json(const nlohmann::json& obj, const std::string& prefix, FieldErrors& errors);

}  // namespace lifeloop::detail
