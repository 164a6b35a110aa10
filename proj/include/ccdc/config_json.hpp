#pragma once

#include <nlohmann/json.hpp>

#include "ccdc/config.hpp"

namespace ccdc {

// Keys mirror the SystemConfig field names. Missing keys keep the values
// already in `base`; unknown keys are rejected.
SystemConfig config_from_json(const nlohmann::json& j, SystemConfig base = {});
nlohmann::json config_to_json(const SystemConfig& cfg);

}  // namespace ccdc
