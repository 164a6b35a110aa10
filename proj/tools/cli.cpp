#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ccdc/config_json.hpp"
#include "ccdc/error.hpp"
#include "ccdc/run.hpp"

namespace ccdc::cli {
namespace {

// Flag values as parsed; only flags the user actually passed override the
// config file.
struct ConfigFlags {
  std::string config_path;
  std::string scheme;
  int K = 0;
  int r = 0;
  int N = 0;
  int Q = 0;
  int T = 0;
  int gamma = 0;
  std::uint64_t seed = 0;
  std::string group;
  std::string workload;
  int dim = 0;

  CLI::Option* o_scheme = nullptr;
  CLI::Option* o_K = nullptr;
  CLI::Option* o_r = nullptr;
  CLI::Option* o_N = nullptr;
  CLI::Option* o_Q = nullptr;
  CLI::Option* o_T = nullptr;
  CLI::Option* o_gamma = nullptr;
  CLI::Option* o_seed = nullptr;
  CLI::Option* o_group = nullptr;
  CLI::Option* o_workload = nullptr;
  CLI::Option* o_dim = nullptr;
};

void add_config_flags(CLI::App& cmd, ConfigFlags& f) {
  cmd.add_option("--config", f.config_path, "JSON file with SystemConfig fields");
  f.o_scheme = cmd.add_option("--scheme", f.scheme, "uncoded | compression | cdc | ccdc");
  f.o_K = cmd.add_option("-K", f.K, "number of nodes");
  f.o_r = cmd.add_option("-r", f.r, "storage parameter r = mu*K");
  f.o_N = cmd.add_option("-N", f.N, "files per job");
  f.o_Q = cmd.add_option("-Q", f.Q, "output functions per job");
  f.o_T = cmd.add_option("-T", f.T, "intermediate value size in bits");
  f.o_gamma = cmd.add_option("--gamma", f.gamma, "jobs J = gamma * C(K, r+1)");
  f.o_seed = cmd.add_option("--seed", f.seed, "workload seed");
  f.o_group = cmd.add_option("--group", f.group, "xor | add8 | add32");
  f.o_workload = cmd.add_option("--workload", f.workload, "prf | linear");
  f.o_dim = cmd.add_option("--dim", f.dim, "linear workload dimension");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

SystemConfig resolve_config(const ConfigFlags& f) {
  SystemConfig cfg;
  if (!f.config_path.empty()) cfg = config_from_json(read_json_file(f.config_path), cfg);
  if (f.o_scheme->count()) cfg.scheme = parse_scheme(f.scheme);
  if (f.o_K->count()) cfg.K = f.K;
  if (f.o_r->count()) cfg.r = f.r;
  if (f.o_N->count()) cfg.N = f.N;
  if (f.o_Q->count()) cfg.Q = f.Q;
  if (f.o_T->count()) cfg.T = f.T;
  if (f.o_gamma->count()) cfg.gamma = f.gamma;
  if (f.o_seed->count()) cfg.seed = f.seed;
  if (f.o_group->count()) cfg.group = parse_group(f.group);
  if (f.o_workload->count()) cfg.workload = parse_workload(f.workload);
  if (f.o_dim->count()) cfg.dim = f.dim;
  return cfg;
}

// Writes to `path` when given, otherwise to `fallback`.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream(std::ostream& fallback) { return file_.is_open() ? file_ : fallback; }

 private:
  std::ofstream file_;
};

void print_text(std::ostream& out, const LoadReport& r) {
  out << "scheme      " << to_string(r.scheme) << '\n'
      << "params      K=" << r.K << " r=" << r.r << " N=" << r.N << " Q=" << r.Q << " gamma=" << r.gamma
      << " J=" << r.J << " T=" << r.T << '\n'
      << "formula     " << to_string(r.formula) << '\n'
      << "measured    " << to_string(r.measured) << '\n'
      << "match       " << (r.match ? "yes" : "no") << '\n'
      << "correct     " << (r.correct ? "yes" : "no") << '\n';
  if (r.per_stage) {
    out << "stage1      " << to_string(r.per_stage->stage1_subset) << " per subset, "
        << to_string(r.per_stage->stage1_total) << " total\n"
        << "stage2      " << to_string(r.per_stage->stage2_subset) << " per subset, "
        << to_string(r.per_stage->stage2_total) << " total\n";
  }
  for (const auto& n : r.notes) out << "note        " << n << '\n';
}

int exit_code(const LoadReport& r, std::ostream& err) {
  if (!r.correct) {
    err << "error: " << r.mismatched_outputs << " reduced outputs differ from the oracle\n";
    return kIncorrect;
  }
  if (!r.match) {
    if (r.padded) {
      err << "warning: measured load differs from the closed form because packets were padded\n";
      return kOk;
    }
    err << "error: measured load " << to_string(r.measured) << " differs from formula " << to_string(r.formula)
        << '\n';
    return kLoadMismatch;
  }
  return kOk;
}

std::pair<int, int> parse_range(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError(std::string("bad ") + what + " range '" + text + "' (expected a or a:b)");
  }
}

std::vector<Scheme> parse_scheme_list(const std::string& text) {
  std::vector<Scheme> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_scheme(item));
  }
  if (out.empty()) throw ConfigError("no schemes selected");
  return out;
}

// Smallest N that every scheme accepts at (K, r).
int auto_files(int K, int r) {
  std::int64_t n = std::lcm<std::int64_t>(r + 1, binomial(K, r));
  n = std::lcm<std::int64_t>(n, K / std::gcd(K, r));
  return static_cast<int>(n);
}

// Smallest T aligned for add32/linear whose r-way split is byte aligned.
int auto_bits(int r) { return std::lcm(32, 8 * r); }

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

int cmd_run(const SystemConfig& cfg, const std::string& format, const std::string& output,
            const std::string& trace_path, std::ostream& out, std::ostream& err) {
  validate(cfg);
  const Workload w = Workload::from(cfg);
  const Outcome outcome = run_scheme(cfg, w, {});
  const LoadReport report =
      verify(outcome, oracle_outputs(cfg, w), formula_load(cfg.scheme, cfg.K, cfg.r, cfg.N));

  Sink sink(output);
  auto& os = sink.stream(out);
  if (format == "json") {
    os << to_json(report).dump(2) << '\n';
  } else if (format == "csv") {
    os << sweep_csv_header() << '\n' << to_csv_row(report) << '\n';
  } else {
    print_text(os, report);
  }
  if (!trace_path.empty()) {
    std::ofstream t(trace_path);
    if (!t) throw ConfigError("cannot open trace file '" + trace_path + "'");
    write_trace_csv(t, outcome.trace);
  }
  return exit_code(report, err);
}

int cmd_trace(const SystemConfig& cfg, const std::string& output, std::ostream& out) {
  validate(cfg);
  const Outcome outcome = run_scheme(cfg, Workload::from(cfg), {});
  Sink sink(output);
  write_trace_csv(sink.stream(out), outcome.trace);
  return kOk;
}

struct SweepArgs {
  std::string K = "3:6";
  std::string r;  // empty: 1..K-1
  int N = 0;      // 0: smallest N valid for all schemes
  int Q = 0;      // 0: Q = K
  int T = 0;      // 0: lcm(32, 8r)
  int gamma = 1;
  std::uint64_t seed = 1;
  std::string group = "add8";
  std::string workload = "prf";
  std::string schemes = "uncoded,compression,cdc,ccdc";
  std::string output;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
  const auto [k_lo, k_hi] = parse_range(a.K, "K");
  const auto schemes = parse_scheme_list(a.schemes);
  std::optional<std::pair<int, int>> r_range;
  if (!a.r.empty()) r_range = parse_range(a.r, "r");

  struct Row {
    int scheme_order;
    int K;
    int r;
    std::string text;
    int code;
  };
  std::vector<Row> rows;
  for (int K = k_lo; K <= k_hi; ++K) {
    const int r_lo = r_range ? std::max(1, r_range->first) : 1;
    const int r_hi = r_range ? std::min(K - 1, r_range->second) : K - 1;
    for (int r = r_lo; r <= r_hi; ++r) {
      for (Scheme s : schemes) {
        SystemConfig cfg;
        cfg.scheme = s;
        cfg.K = K;
        cfg.r = r;
        cfg.N = a.N > 0 ? a.N : auto_files(K, r);
        cfg.Q = a.Q > 0 ? a.Q : K;
        cfg.T = a.T > 0 ? a.T : auto_bits(r);
        cfg.gamma = a.gamma;
        cfg.seed = a.seed;
        cfg.group = parse_group(a.group);
        cfg.workload = parse_workload(a.workload);
        const int order = static_cast<int>(std::find(std::begin(kAllSchemes), std::end(kAllSchemes), s) -
                                           std::begin(kAllSchemes));
        const auto violations = config_violations(cfg, s);
        if (!violations.empty()) {
          std::ostringstream os;
          os << to_string(s) << ',' << K << ',' << r << ',' << cfg.N << ',' << cfg.Q << ",,,,,,skipped,"
             << csv_quote(violations.front());
          rows.push_back({order, K, r, os.str(), kOk});
          continue;
        }
        const LoadReport report = evaluate(cfg);
        int code = kOk;
        if (!report.correct) code = kIncorrect;
        else if (!report.match && !report.padded) code = kLoadMismatch;
        rows.push_back({order, K, r, to_csv_row(report), code});
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& x, const Row& y) {
    return std::tie(x.scheme_order, x.K, x.r) < std::tie(y.scheme_order, y.K, y.r);
  });
  Sink sink(a.output);
  auto& os = sink.stream(out);
  os << sweep_csv_header() << '\n';
  int code = kOk;
  for (const auto& row : rows) {
    os << row.text << '\n';
    code = std::max(code, row.code);
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coded shuffle simulator for MapReduce jobs with linear reduction"};
  app.require_subcommand(1);

  ConfigFlags run_flags;
  std::string format = "text";
  std::string run_output;
  std::string trace_path;
  auto* run_cmd = app.add_subcommand("run", "run one scheme and verify load and outputs");
  add_config_flags(*run_cmd, run_flags);
  run_cmd->add_option("--format", format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
  run_cmd->add_option("-o,--output", run_output, "write the report here instead of stdout");
  run_cmd->add_option("--trace", trace_path, "also write the message trace CSV here");

  ConfigFlags trace_flags;
  std::string trace_output;
  auto* trace_cmd = app.add_subcommand("trace", "dump the message-level trace as CSV");
  add_config_flags(*trace_cmd, trace_flags);
  trace_cmd->add_option("-o,--output", trace_output, "write the CSV here instead of stdout");

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "formula vs measured table over (scheme, K, r)");
  sweep_cmd->add_option("-K", sweep.K, "node count range a:b")->capture_default_str();
  sweep_cmd->add_option("-r", sweep.r, "storage range a:b (default 1:K-1)");
  sweep_cmd->add_option("-N", sweep.N, "files per job (default: smallest valid for all schemes)");
  sweep_cmd->add_option("-Q", sweep.Q, "functions per job (default: K)");
  sweep_cmd->add_option("-T", sweep.T, "value size in bits (default: lcm(32, 8r))");
  sweep_cmd->add_option("--gamma", sweep.gamma)->capture_default_str();
  sweep_cmd->add_option("--seed", sweep.seed)->capture_default_str();
  sweep_cmd->add_option("--group", sweep.group)->capture_default_str();
  sweep_cmd->add_option("--workload", sweep.workload)->capture_default_str();
  sweep_cmd->add_option("--schemes", sweep.schemes, "comma-separated list")->capture_default_str();
  sweep_cmd->add_option("-o,--output", sweep.output, "write the CSV here instead of stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(resolve_config(run_flags), format, run_output, trace_path, out, err);
    if (trace_cmd->parsed()) return cmd_trace(resolve_config(trace_flags), trace_output, out);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace ccdc::cli
