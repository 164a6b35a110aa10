#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccdc/config.hpp"
#include "ccdc/rational.hpp"
#include "ccdc/shuffle.hpp"

namespace ccdc {

using OutputMap = std::map<FunctionRef, IntermediateValue>;

// Closed-form communication loads, normalized by JQT.
//   uncoded      (1-mu) N
//   compression  ceil(1/mu) - 1 for mu < 1/2, else 1
//   cdc          (1-mu) N / (mu K)
//   ccdc         (1-mu)(mu K + 1) / (mu K)
Rational formula_load(Scheme scheme, int K, int r, int N);

// Compressed CDC, one (r+1)-subset: stage 1, and stage 2 summed over the
// K-r-1 outside nodes.
Rational stage1_formula(int K, int r, int J);
Rational stage2_formula(int K, int r, int J);

// φ for every job and function, summed centrally from map_value with no
// placement or network involved.
OutputMap oracle_outputs(const SystemConfig& cfg, const Workload& w);

struct StageLoads {
  Rational stage1_subset;  // first subset (job 1)
  Rational stage2_subset;
  Rational stage1_total;
  Rational stage2_total;
  bool uniform = true;  // every subset matched the first one
};

// Compressed-CDC runs only; read off the trace tags.
StageLoads stage_loads(const Outcome& outcome);

struct LoadReport {
  Scheme scheme = Scheme::Ccdc;
  int K = 0;
  int r = 0;
  int N = 0;
  int Q = 0;
  int gamma = 0;
  int J = 0;
  int T = 0;
  Rational formula;
  Rational measured;
  bool match = false;
  bool correct = false;
  std::size_t mismatched_outputs = 0;
  std::optional<StageLoads> per_stage;
  bool padded = false;
  std::vector<std::string> notes;
};

// Bitwise comparison of every output with the oracle and exact comparison of
// the measured load with `formula`. Throws ConfigError when the output sets
// differ (the oracle belongs to another configuration).
LoadReport verify(const Outcome& outcome, const OutputMap& oracle, const Rational& formula);

nlohmann::json to_json(const LoadReport& report);
LoadReport report_from_json(const nlohmann::json& j);

// scheme,K,r,N,Q,J,formula_num,formula_den,measured_num,measured_den,match,correct
std::string sweep_csv_header();
std::string to_csv_row(const LoadReport& report);

}  // namespace ccdc
