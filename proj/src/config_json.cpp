#include "ccdc/config_json.hpp"

#include "ccdc/error.hpp"

namespace ccdc {

SystemConfig config_from_json(const nlohmann::json& j, SystemConfig base) {
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "K") base.K = value.get<int>();
      else if (key == "r") base.r = value.get<int>();
      else if (key == "N") base.N = value.get<int>();
      else if (key == "Q") base.Q = value.get<int>();
      else if (key == "T") base.T = value.get<int>();
      else if (key == "gamma") base.gamma = value.get<int>();
      else if (key == "seed") base.seed = value.get<std::uint64_t>();
      else if (key == "dim") base.dim = value.get<int>();
      else if (key == "group") base.group = parse_group(value.get<std::string>());
      else if (key == "workload") base.workload = parse_workload(value.get<std::string>());
      else if (key == "scheme") base.scheme = parse_scheme(value.get<std::string>());
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed config value: ") + e.what());
  }
  return base;
}

nlohmann::json config_to_json(const SystemConfig& cfg) {
  return {{"K", cfg.K},
          {"r", cfg.r},
          {"N", cfg.N},
          {"Q", cfg.Q},
          {"T", cfg.T},
          {"gamma", cfg.gamma},
          {"seed", cfg.seed},
          {"group", std::string(to_string(cfg.group))},
          {"workload", std::string(to_string(cfg.workload))},
          {"dim", cfg.dim},
          {"scheme", std::string(to_string(cfg.scheme))}};
}

}  // namespace ccdc
