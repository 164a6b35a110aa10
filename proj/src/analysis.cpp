#include "ccdc/analysis.hpp"

#include <sstream>

#include "ccdc/error.hpp"
#include "ccdc/subsets.hpp"
#include "ccdc/workload.hpp"

namespace ccdc {
namespace {

void check_storage(int K, int r) {
  if (K < 2 || r < 1 || r > K - 1) throw ParameterError("formula_load: need 1 <= r <= K-1");
}

}  // namespace

Rational formula_load(Scheme scheme, int K, int r, int N) {
  check_storage(K, r);
  const Rational mu(r, K);
  switch (scheme) {
    case Scheme::Uncoded:
      return (1 - mu) * N;
    case Scheme::Compression:
      if (2 * r >= K) return Rational(1);
      return Rational((K + r - 1) / r - 1);
    case Scheme::Cdc:
      return (1 - mu) * N / (mu * K);
    case Scheme::Ccdc:
      return (1 - mu) * (mu * K + 1) / (mu * K);
  }
  throw ParameterError("formula_load: invalid scheme");
}

Rational stage1_formula(int K, int r, int J) {
  check_storage(K, r);
  return Rational(r + 1, r) / (static_cast<std::int64_t>(J) * K);
}

Rational stage2_formula(int K, int r, int J) { return stage1_formula(K, r, J) * (K - r - 1); }

OutputMap oracle_outputs(const SystemConfig& cfg, const Workload& w) {
  OutputMap out;
  for (int j = 1; j <= cfg.jobs(); ++j) {
    for (int q = 1; q <= cfg.Q; ++q) {
      IntermediateValue acc = group_identity(static_cast<std::size_t>(cfg.T));
      for (int n = 1; n <= cfg.N; ++n) group_accumulate(cfg.group, acc, map_value(w, cfg, {j, q}, {j, n}));
      out.emplace(FunctionRef{j, q}, std::move(acc));
    }
  }
  return out;
}

StageLoads stage_loads(const Outcome& outcome) {
  const auto& cfg = outcome.config;
  if (cfg.scheme != Scheme::Ccdc) throw ParameterError("stage loads exist for compressed CDC only");
  const int J = cfg.jobs();
  std::map<int, std::int64_t> s1;
  std::map<int, std::int64_t> s2;
  for (const auto& m : outcome.trace.messages()) {
    if (m.tag.stage == 1) s1[m.tag.job] += static_cast<std::int64_t>(m.bits);
    if (m.tag.stage == 2) s2[m.tag.job] += static_cast<std::int64_t>(m.bits);
  }
  const std::int64_t norm = static_cast<std::int64_t>(J) * cfg.Q * cfg.T;
  StageLoads loads;
  loads.stage1_subset = Rational(s1[1], norm);
  loads.stage2_subset = Rational(s2[1], norm);
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  for (int j = 1; j <= J; ++j) {
    t1 += s1[j];
    t2 += s2[j];
    if (s1[j] != s1[1] || s2[j] != s2[1]) loads.uniform = false;
  }
  loads.stage1_total = Rational(t1, norm);
  loads.stage2_total = Rational(t2, norm);
  return loads;
}

LoadReport verify(const Outcome& outcome, const OutputMap& oracle, const Rational& formula) {
  const auto& cfg = outcome.config;
  if (outcome.outputs.size() != oracle.size()) {
    throw ConfigError("config mismatch: run has " + std::to_string(outcome.outputs.size()) +
                      " outputs, oracle has " + std::to_string(oracle.size()));
  }
  LoadReport report;
  report.scheme = cfg.scheme;
  report.K = cfg.K;
  report.r = cfg.r;
  report.N = cfg.N;
  report.Q = cfg.Q;
  report.gamma = cfg.gamma;
  report.J = cfg.jobs();
  report.T = cfg.T;
  report.formula = formula;
  report.measured = outcome.load;
  report.match = formula == outcome.load;
  for (const auto& [f, expected] : oracle) {
    auto it = outcome.outputs.find(f);
    if (it == outcome.outputs.end()) throw ConfigError("config mismatch: output sets differ");
    if (it->second != expected) ++report.mismatched_outputs;
  }
  report.correct = report.mismatched_outputs == 0;
  report.padded = outcome.padded;
  if (cfg.scheme == Scheme::Ccdc) report.per_stage = stage_loads(outcome);
  if (outcome.padded) {
    report.notes.emplace_back("padding: packets were zero padded before splitting; padded bits are counted");
  }
  if (!report.correct) {
    report.notes.push_back(std::to_string(report.mismatched_outputs) + " outputs differ from the oracle");
  }
  return report;
}

namespace {

nlohmann::json rational_json(const Rational& r) {
  return {{"num", r.numerator()}, {"den", r.denominator()}, {"text", to_string(r)}};
}

Rational rational_from(const nlohmann::json& j) {
  return Rational(j.at("num").get<std::int64_t>(), j.at("den").get<std::int64_t>());
}

}  // namespace

nlohmann::json to_json(const LoadReport& report) {
  nlohmann::json j = {
      {"scheme", std::string(to_string(report.scheme))},
      {"params", {{"K", report.K}, {"r", report.r}, {"N", report.N}, {"Q", report.Q},
                  {"gamma", report.gamma}, {"J", report.J}, {"T", report.T}}},
      {"formula", rational_json(report.formula)},
      {"measured", rational_json(report.measured)},
      {"match", report.match},
      {"correct", report.correct},
      {"mismatched_outputs", report.mismatched_outputs},
      {"padded", report.padded},
      {"notes", report.notes},
  };
  if (report.per_stage) {
    const auto& s = *report.per_stage;
    j["per_stage"] = {{"stage1_subset", rational_json(s.stage1_subset)},
                      {"stage2_subset", rational_json(s.stage2_subset)},
                      {"stage1_total", rational_json(s.stage1_total)},
                      {"stage2_total", rational_json(s.stage2_total)},
                      {"uniform", s.uniform}};
  }
  return j;
}

LoadReport report_from_json(const nlohmann::json& j) {
  LoadReport r;
  r.scheme = parse_scheme(j.at("scheme").get<std::string>());
  const auto& p = j.at("params");
  r.K = p.at("K");
  r.r = p.at("r");
  r.N = p.at("N");
  r.Q = p.at("Q");
  r.gamma = p.at("gamma");
  r.J = p.at("J");
  r.T = p.at("T");
  r.formula = rational_from(j.at("formula"));
  r.measured = rational_from(j.at("measured"));
  r.match = j.at("match");
  r.correct = j.at("correct");
  r.mismatched_outputs = j.at("mismatched_outputs");
  r.padded = j.at("padded");
  r.notes = j.at("notes").get<std::vector<std::string>>();
  if (j.contains("per_stage")) {
    const auto& s = j.at("per_stage");
    r.per_stage = StageLoads{rational_from(s.at("stage1_subset")), rational_from(s.at("stage2_subset")),
                             rational_from(s.at("stage1_total")), rational_from(s.at("stage2_total")),
                             s.at("uniform").get<bool>()};
  }
  return r;
}

std::string sweep_csv_header() {
  return "scheme,K,r,N,Q,J,formula_num,formula_den,measured_num,measured_den,match,correct";
}

std::string to_csv_row(const LoadReport& report) {
  std::ostringstream os;
  os << to_string(report.scheme) << ',' << report.K << ',' << report.r << ',' << report.N << ',' << report.Q << ','
     << report.J << ',' << report.formula.numerator() << ',' << report.formula.denominator() << ','
     << report.measured.numerator() << ',' << report.measured.denominator() << ','
     << (report.match ? "true" : "false") << ',' << (report.correct ? "true" : "false");
  return os.str();
}

}  // namespace ccdc
