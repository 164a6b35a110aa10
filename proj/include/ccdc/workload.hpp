#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "ccdc/config.hpp"
#include "ccdc/payload.hpp"
#include "ccdc/placement.hpp"

namespace ccdc {

// Deterministic synthetic map functions g_q.
//
// prf:    v_{q,n} is the T-bit output of a keyed PRF of (seed, j, q, n).
// linear: file n of job j is a vector of `dim` 16-bit words; g_q is a seeded
//         dot product producing T/32 wrapping 32-bit words. Models a shard of
//         a partial gradient. dim == 0 gives the identically-zero map.
//
// PRF construction: mix64 is the splitmix64 finalizer. The key is
//   k = mix64(mix64(mix64(mix64(seed ^ D) ^ j) ^ q) ^ n)
// with a per-purpose domain constant D, and output word c (little endian) is
// mix64(k ^ mix64(c)). Linear file words and coefficients use the same
// chain with their own domain constants.
struct Workload {
  WorkloadFamily family = WorkloadFamily::Prf;
  std::uint64_t seed = 1;
  int dim = 64;

  static Workload from(const SystemConfig& cfg) { return {cfg.workload, cfg.seed, cfg.dim}; }
};

std::uint64_t mix64(std::uint64_t x);

IntermediateValue map_value(const Workload& w, const SystemConfig& cfg, FunctionRef f, FileRef file);

// Linear family internals, exposed so linearity can be checked directly.
// File words are 16-bit values widened to 32 bits; combining files wordwise
// with wrapping 32-bit addition commutes with the map under add32.
std::vector<std::uint32_t> linear_file_payload(const Workload& w, FileRef file);
IntermediateValue linear_map(const Workload& w, const SystemConfig& cfg, FunctionRef f,
                             std::span<const std::uint32_t> file_words);

using ValueTable = std::map<std::pair<FunctionRef, FileRef>, IntermediateValue>;

// Node-side map phase. Every evaluation is checked against the placement and
// counted, so a scheme reading a file its node lacks fails loudly.
class Mapper {
 public:
  Mapper(const Workload& w, const SystemConfig& cfg, const Placement& placement);

  ValueTable map_files(int node, std::span<const FileRef> files, std::span<const FunctionRef> functions);
  IntermediateValue map_one(int node, FunctionRef f, FileRef file);
  // Group sum of v_{f,n} over the given file indices of f.job, mapped at `node`.
  IntermediateValue precombine(int node, FunctionRef f, std::span<const int> files);

  const std::vector<std::uint64_t>& work() const { return work_; }
  const SystemConfig& config() const { return cfg_; }

 private:
  Workload workload_;
  const SystemConfig& cfg_;
  const Placement& placement_;
  std::vector<std::uint64_t> work_;
};

}  // namespace ccdc
