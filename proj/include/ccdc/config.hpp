#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ccdc/payload.hpp"
#include "ccdc/rational.hpp"

namespace ccdc {

enum class Scheme { Uncoded, Compression, Cdc, Ccdc };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);
inline constexpr Scheme kAllSchemes[] = {Scheme::Uncoded, Scheme::Compression, Scheme::Cdc,
                                         Scheme::Ccdc};

enum class WorkloadFamily { Prf, Linear };

std::string_view to_string(WorkloadFamily family);
WorkloadFamily parse_workload(std::string_view name);

// Run parameters. The storage fraction mu is carried as the integer r = mu*K.
struct SystemConfig {
  int K = 4;
  int r = 2;
  int N = 6;
  int Q = 4;
  int T = 1024;
  int gamma = 1;
  std::uint64_t seed = 1;
  Group group = Group::Add8;
  WorkloadFamily workload = WorkloadFamily::Prf;
  int dim = 64;  // linear family only
  Scheme scheme = Scheme::Ccdc;

  // J = gamma * C(K, r+1), shared by every scheme so loads are comparable.
  int jobs() const;
  Rational mu() const { return Rational(r, K); }
  int functions_per_node() const { return Q / K; }

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

// Every violated condition, phrased as the condition that must hold. The
// one-argument form checks against cfg.scheme.
std::vector<std::string> config_violations(const SystemConfig& cfg);
std::vector<std::string> config_violations(const SystemConfig& cfg, Scheme scheme);

// Throws ConfigError naming the first violated condition for cfg.scheme.
void validate(const SystemConfig& cfg);
void validate(const SystemConfig& cfg, Scheme scheme);

struct FileRef {
  int job = 1;
  int index = 1;
  friend auto operator<=>(const FileRef&, const FileRef&) = default;
};

struct FunctionRef {
  int job = 1;
  int index = 1;
  friend auto operator<=>(const FunctionRef&, const FunctionRef&) = default;
};

}  // namespace ccdc
