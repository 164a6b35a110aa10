#include "ccdc/workload.hpp"

#include "ccdc/error.hpp"

namespace ccdc {
namespace {

constexpr std::uint64_t kPrfDomain = 0x7072662d76616c75ULL;
constexpr std::uint64_t kFileDomain = 0x6c696e2d66696c65ULL;
constexpr std::uint64_t kCoefDomain = 0x6c696e2d636f6566ULL;

std::uint64_t chain(std::uint64_t seed, std::uint64_t domain, std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = mix64(seed ^ domain);
  for (std::uint64_t p : parts) h = mix64(h ^ p);
  return h;
}

void check_ranges(const SystemConfig& cfg, FunctionRef f, FileRef file) {
  if (f.job != file.job) {
    throw ParameterError("cross-job map: function of job " + std::to_string(f.job) +
                         " applied to file of job " + std::to_string(file.job));
  }
  if (f.index < 1 || f.index > cfg.Q || file.index < 1 || file.index > cfg.N || f.job < 1) {
    throw ParameterError("map_value: function or file index out of range");
  }
}

}  // namespace

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::uint32_t> linear_file_payload(const Workload& w, FileRef file) {
  std::vector<std::uint32_t> words(static_cast<std::size_t>(w.dim));
  const std::uint64_t key = chain(w.seed, kFileDomain,
                                  {static_cast<std::uint64_t>(file.job), static_cast<std::uint64_t>(file.index)});
  for (std::size_t i = 0; i < words.size(); ++i) {
    words[i] = static_cast<std::uint32_t>(mix64(key ^ mix64(i)) & 0xFFFFU);
  }
  return words;
}

IntermediateValue linear_map(const Workload& w, const SystemConfig& cfg, FunctionRef f,
                             std::span<const std::uint32_t> file_words) {
  if (cfg.T % 32 != 0) throw ConfigError("linear workload requires 32 to divide T");
  if (file_words.size() != static_cast<std::size_t>(w.dim)) {
    throw PayloadError("linear_map: file payload has the wrong dimension");
  }
  const std::size_t out_words = static_cast<std::size_t>(cfg.T) / 32;
  const std::uint64_t key = chain(w.seed, kCoefDomain,
                                  {static_cast<std::uint64_t>(f.job), static_cast<std::uint64_t>(f.index)});
  IntermediateValue v(static_cast<std::size_t>(cfg.T));
  auto bytes = v.bytes();
  for (std::size_t t = 0; t < out_words; ++t) {
    std::uint32_t acc = 0;
    const std::uint64_t row = mix64(key ^ mix64(t));
    for (std::size_t i = 0; i < file_words.size(); ++i) {
      const auto coef = static_cast<std::uint32_t>(mix64(row + i));
      acc += coef * file_words[i];
    }
    bytes[4 * t] = static_cast<std::uint8_t>(acc);
    bytes[4 * t + 1] = static_cast<std::uint8_t>(acc >> 8);
    bytes[4 * t + 2] = static_cast<std::uint8_t>(acc >> 16);
    bytes[4 * t + 3] = static_cast<std::uint8_t>(acc >> 24);
  }
  return v;
}

IntermediateValue map_value(const Workload& w, const SystemConfig& cfg, FunctionRef f, FileRef file) {
  check_ranges(cfg, f, file);
  if (w.family == WorkloadFamily::Linear) {
    const auto words = linear_file_payload(w, file);
    return linear_map(w, cfg, f, words);
  }
  const std::uint64_t key = chain(w.seed, kPrfDomain,
                                  {static_cast<std::uint64_t>(f.job), static_cast<std::uint64_t>(f.index),
                                   static_cast<std::uint64_t>(file.index)});
  IntermediateValue v(static_cast<std::size_t>(cfg.T));
  auto bytes = v.bytes();
  for (std::size_t c = 0; c * 8 < bytes.size(); ++c) {
    std::uint64_t word = mix64(key ^ mix64(c));
    for (std::size_t b = 0; b < 8 && c * 8 + b < bytes.size(); ++b) {
      bytes[c * 8 + b] = static_cast<std::uint8_t>(word);
      word >>= 8;
    }
  }
  return v;
}

Mapper::Mapper(const Workload& w, const SystemConfig& cfg, const Placement& placement)
    : workload_(w), cfg_(cfg), placement_(placement), work_(static_cast<std::size_t>(placement.nodes()), 0) {}

IntermediateValue Mapper::map_one(int node, FunctionRef f, FileRef file) {
  if (!placement_.stores(node, file)) {
    throw PlacementError("node " + std::to_string(node) + " does not store file " +
                         std::to_string(file.index) + " of job " + std::to_string(file.job));
  }
  auto v = map_value(workload_, cfg_, f, file);
  ++work_[static_cast<std::size_t>(node - 1)];
  return v;
}

ValueTable Mapper::map_files(int node, std::span<const FileRef> files, std::span<const FunctionRef> functions) {
  for (const auto& file : files) {
    if (!placement_.stores(node, file)) {
      throw PlacementError("node " + std::to_string(node) + " does not store file " +
                           std::to_string(file.index) + " of job " + std::to_string(file.job));
    }
  }
  ValueTable table;
  for (const auto& f : functions) {
    for (const auto& file : files) table.emplace(std::make_pair(f, file), map_one(node, f, file));
  }
  return table;
}

IntermediateValue Mapper::precombine(int node, FunctionRef f, std::span<const int> files) {
  IntermediateValue acc = group_identity(static_cast<std::size_t>(cfg_.T));
  for (int n : files) group_accumulate(cfg_.group, acc, map_one(node, f, FileRef{f.job, n}));
  return acc;
}

}  // namespace ccdc
