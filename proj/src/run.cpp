#include "ccdc/run.hpp"

#include "ccdc/error.hpp"

namespace ccdc {

Outcome run_scheme(const SystemConfig& cfg, const Workload& w, const RunOptions& opts) {
  switch (cfg.scheme) {
    case Scheme::Uncoded: return uncoded_run(cfg, w, opts);
    case Scheme::Compression: return compression_run(cfg, w, opts);
    case Scheme::Cdc: return cdc_run(cfg, w, opts);
    case Scheme::Ccdc: return ccdc_run(cfg, w, opts);
  }
  throw ConfigError("invalid scheme");
}

LoadReport evaluate(const SystemConfig& cfg, const RunOptions& opts) {
  validate(cfg);
  const Workload w = Workload::from(cfg);
  const Outcome outcome = run_scheme(cfg, w, opts);
  return verify(outcome, oracle_outputs(cfg, w), formula_load(cfg.scheme, cfg.K, cfg.r, cfg.N));
}

}  // namespace ccdc
