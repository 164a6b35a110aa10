#include <doctest.h>

#include <algorithm>

#include "ccdc/error.hpp"
#include "ccdc/run.hpp"
#include "test_util.hpp"

using namespace ccdc;
using ccdc::testing::make_config;

TEST_CASE("formula_load examples") {
  CHECK(formula_load(Scheme::Ccdc, 4, 2, 6) == Rational(3, 4));
  CHECK(formula_load(Scheme::Ccdc, 3, 2, 6) == Rational(1, 2));
  CHECK(formula_load(Scheme::Ccdc, 6, 3, 4) == Rational(2, 3));
  CHECK(formula_load(Scheme::Cdc, 3, 2, 6) == Rational(1));
  CHECK(formula_load(Scheme::Cdc, 4, 2, 6) == Rational(3, 2));
  CHECK(formula_load(Scheme::Compression, 4, 1, 8) == Rational(3));
  CHECK(formula_load(Scheme::Compression, 3, 2, 6) == Rational(1));
  CHECK(formula_load(Scheme::Compression, 5, 2, 10) == Rational(2));
  CHECK(formula_load(Scheme::Uncoded, 3, 2, 6) == Rational(2));
  CHECK(stage1_formula(4, 2, 4) == Rational(3, 32));
  CHECK(stage2_formula(4, 2, 4) == Rational(3, 32));
  CHECK(stage2_formula(3, 2, 1) == Rational(0));
}

TEST_CASE("formula_load rejects invalid parameters") {
  CHECK_THROWS_AS(formula_load(Scheme::Ccdc, 4, 0, 6), ParameterError);
  CHECK_THROWS_AS(formula_load(Scheme::Ccdc, 4, 4, 6), ParameterError);
  CHECK_THROWS_AS(formula_load(static_cast<Scheme>(17), 4, 2, 6), ParameterError);
}

TEST_CASE("ccdc beats cdc exactly when a batch holds several files") {
  for (int K = 3; K <= 6; ++K) {
    for (int r = 1; r < K; ++r) {
      for (int m = 1; m <= 4; ++m) {
        const int N = static_cast<int>(binomial(K, r)) * m;
        auto ccdc = formula_load(Scheme::Ccdc, K, r, N);
        auto cdc = formula_load(Scheme::Cdc, K, r, N);
        CHECK((ccdc <= cdc) == (r + 1 <= N));
        CHECK((ccdc == cdc) == (r + 1 == N));
      }
    }
  }
}

TEST_CASE("ccdc formula strictly decreases in r") {
  for (int K = 3; K <= 12; ++K) {
    for (int r = 1; r + 1 < K; ++r) CHECK(formula_load(Scheme::Ccdc, K, r + 1, 1) < formula_load(Scheme::Ccdc, K, r, 1));
  }
}

TEST_CASE("compression formula is flat once r >= K/2") {
  for (int K = 2; K <= 12; ++K) {
    for (int r = 1; r < K; ++r) {
      if (2 * r >= K) CHECK(formula_load(Scheme::Compression, K, r, 1) == Rational(1));
      else CHECK(formula_load(Scheme::Compression, K, r, 1) == Rational((K + r - 1) / r - 1));
    }
  }
}

TEST_CASE("stage formulas sum to the total") {
  for (int K = 2; K <= 8; ++K) {
    for (int r = 1; r < K; ++r) {
      const int J = static_cast<int>(binomial(K, r + 1));
      CHECK(Rational(J) * (stage1_formula(K, r, J) + stage2_formula(K, r, J)) == formula_load(Scheme::Ccdc, K, r, 1));
    }
  }
}

TEST_CASE("oracle_outputs examples") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 256);
  cfg.workload = WorkloadFamily::Linear;
  cfg.dim = 0;
  auto zero = oracle_outputs(cfg, Workload::from(cfg));
  CHECK(zero.size() == 16);
  for (const auto& [f, v] : zero) CHECK(v.is_zero());

  auto single = make_config(Scheme::Ccdc, 3, 2, 1, 3, 128);
  Workload w{};
  auto one = oracle_outputs(single, w);
  for (const auto& [f, v] : one) CHECK(v == map_value(w, single, f, FileRef{f.job, 1}));
}

TEST_CASE("verify on a clean run") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 1024);
  auto report = evaluate(cfg);
  CHECK(report.match);
  CHECK(report.correct);
  CHECK(report.J == 4);
  CHECK(report.measured == Rational(3, 4));
  REQUIRE(report.per_stage.has_value());
  CHECK(report.per_stage->stage1_subset == Rational(3, 32));
  CHECK(report.notes.empty());
}

TEST_CASE("verify detects a flipped payload bit") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 256);
  RunOptions opts;
  opts.tamper = [](std::size_t seq, BitString& p) {
    if (seq == 5) p.flip_bit(17);
  };
  auto report = evaluate(cfg, opts);
  CHECK_FALSE(report.correct);
  CHECK(report.match);
  CHECK(report.mismatched_outputs >= 1);
}

TEST_CASE("verify annotates padded runs") {
  auto cfg = make_config(Scheme::Ccdc, 4, 3, 4, 4, 8);
  auto report = evaluate(cfg);
  CHECK(report.correct);
  CHECK_FALSE(report.match);
  CHECK(report.padded);
  CHECK(std::any_of(report.notes.begin(), report.notes.end(),
                    [](const std::string& n) { return n.find("padding") != std::string::npos; }));
}

TEST_CASE("verify rejects an oracle from another configuration") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 256);
  auto outcome = ccdc_run(cfg, Workload::from(cfg));
  auto other = make_config(Scheme::Ccdc, 3, 2, 6, 3, 256);
  CHECK_THROWS_AS(verify(outcome, oracle_outputs(other, Workload::from(other)), Rational(3, 4)), ConfigError);
}

TEST_CASE("stage loads exist for the compressed scheme only") {
  auto cfg = make_config(Scheme::Cdc, 4, 2, 6, 4, 256);
  CHECK_THROWS_AS(stage_loads(cdc_run(cfg, Workload::from(cfg))), ParameterError);
}

TEST_CASE("report JSON round trip and CSV row") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 1024);
  auto report = evaluate(cfg);
  auto back = report_from_json(to_json(report));
  CHECK(back.scheme == report.scheme);
  CHECK(back.formula == report.formula);
  CHECK(back.measured == report.measured);
  CHECK(back.match == report.match);
  CHECK(back.correct == report.correct);
  CHECK(back.per_stage.has_value());
  CHECK(to_json(report)["measured"]["text"] == "3/4");

  CHECK(sweep_csv_header() == "scheme,K,r,N,Q,J,formula_num,formula_den,measured_num,measured_den,match,correct");
  CHECK(to_csv_row(report) == "ccdc,4,2,6,4,4,3,4,3,4,true,true");
}
