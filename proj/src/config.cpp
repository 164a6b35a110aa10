#include "ccdc/config.hpp"

#include <limits>

#include "ccdc/error.hpp"
#include "ccdc/subsets.hpp"

namespace ccdc {

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Uncoded: return "uncoded";
    case Scheme::Compression: return "compression";
    case Scheme::Cdc: return "cdc";
    case Scheme::Ccdc: return "ccdc";
  }
  return "?";
}

Scheme parse_scheme(std::string_view name) {
  for (Scheme s : kAllSchemes) {
    if (name == to_string(s)) return s;
  }
  throw ConfigError("unknown scheme '" + std::string(name) +
                    "' (expected uncoded, compression, cdc or ccdc)");
}

std::string_view to_string(WorkloadFamily family) {
  return family == WorkloadFamily::Prf ? "prf" : "linear";
}

WorkloadFamily parse_workload(std::string_view name) {
  if (name == "prf") return WorkloadFamily::Prf;
  if (name == "linear") return WorkloadFamily::Linear;
  throw ConfigError("unknown workload '" + std::string(name) + "' (expected prf or linear)");
}

int SystemConfig::jobs() const {
  const std::int64_t j = static_cast<std::int64_t>(gamma) * binomial(K, r + 1);
  if (j > std::numeric_limits<int>::max()) throw ConfigError("job count overflows");
  return static_cast<int>(j);
}

namespace {

std::vector<std::string> common_violations(const SystemConfig& cfg) {
  std::vector<std::string> out;
  if (cfg.K < 2 || cfg.K > 64) out.emplace_back("K must satisfy 2 <= K <= 64");
  if (cfg.r < 1 || cfg.r > cfg.K - 1) out.emplace_back("r must satisfy 1 <= r <= K-1");
  if (cfg.N < 1) out.emplace_back("N must be at least 1");
  if (cfg.Q < 1) out.emplace_back("Q must be at least 1");
  if (cfg.gamma < 1) out.emplace_back("gamma must be at least 1");
  if (cfg.T < 8 || cfg.T % 8 != 0) out.emplace_back("T must be a positive multiple of 8");
  if (!out.empty()) return out;
  if (cfg.Q % cfg.K != 0) out.emplace_back("K must divide Q");
  if (cfg.group == Group::Add32 && cfg.T % 32 != 0) out.emplace_back("add32 requires 32 to divide T");
  if (cfg.workload == WorkloadFamily::Linear && cfg.T % 32 != 0) {
    out.emplace_back("linear workload requires 32 to divide T");
  }
  if (cfg.dim < 0) out.emplace_back("dim must be non-negative");
  return out;
}

}  // namespace

std::vector<std::string> config_violations(const SystemConfig& cfg, Scheme scheme) {
  auto out = common_violations(cfg);
  if (cfg.K < 2 || cfg.r < 1 || cfg.r >= cfg.K || cfg.N < 1) return out;
  switch (scheme) {
    case Scheme::Uncoded:
    case Scheme::Ccdc:
      if (cfg.N % (cfg.r + 1) != 0) out.emplace_back("(r+1) must divide N");
      break;
    case Scheme::Cdc:
      if (cfg.N % binomial(cfg.K, cfg.r) != 0) out.emplace_back("C(K,r) must divide N");
      break;
    case Scheme::Compression: {
      const int batches = (cfg.K + cfg.r - 1) / cfg.r;
      if (batches > cfg.K) out.emplace_back("ceil(K/r) must not exceed K");
      if ((static_cast<std::int64_t>(cfg.r) * cfg.N) % cfg.K != 0) {
        out.emplace_back("K must divide r*N (mu*N must be an integer)");
      } else if (static_cast<std::int64_t>(cfg.r) * cfg.N / cfg.K < 1) {
        out.emplace_back("floor(mu*N) must be at least 1");
      }
      break;
    }
  }
  return out;
}

std::vector<std::string> config_violations(const SystemConfig& cfg) { return config_violations(cfg, cfg.scheme); }

void validate(const SystemConfig& cfg, Scheme scheme) {
  auto v = config_violations(cfg, scheme);
  if (!v.empty()) throw ConfigError(v.front());
}

void validate(const SystemConfig& cfg) { validate(cfg, cfg.scheme); }

}  // namespace ccdc
