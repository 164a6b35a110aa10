#pragma once

#include "ccdc/analysis.hpp"
#include "ccdc/baseline.hpp"
#include "ccdc/compressed.hpp"

namespace ccdc {

Outcome run_scheme(const SystemConfig& cfg, const Workload& w, const RunOptions& opts = {});

// Runs cfg.scheme with the workload named by cfg and verifies it.
LoadReport evaluate(const SystemConfig& cfg, const RunOptions& opts = {});

}  // namespace ccdc
