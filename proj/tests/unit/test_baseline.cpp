#include <doctest.h>

#include <random>

#include "ccdc/error.hpp"
#include "ccdc/run.hpp"
#include "test_util.hpp"

using namespace ccdc;
using ccdc::testing::make_config;

namespace {

void check_exact(const SystemConfig& cfg, const Outcome& outcome) {
  auto report = verify(outcome, oracle_outputs(cfg, Workload::from(cfg)), formula_load(cfg.scheme, cfg.K, cfg.r, cfg.N));
  CHECK(report.correct);
  CHECK(report.match);
  CHECK(report.mismatched_outputs == 0);
}

}  // namespace

TEST_CASE("uncoded loads") {
  auto cfg = make_config(Scheme::Uncoded, 3, 2, 6, 3, 1024);
  auto outcome = uncoded_run(cfg, Workload::from(cfg));
  CHECK(outcome.load == Rational(2));
  CHECK(outcome.trace.size() == 6);
  check_exact(cfg, outcome);

  // One file per batch: (1 - mu) N = 1.
  auto single = make_config(Scheme::Uncoded, 3, 2, 3, 3, 1024);
  auto small = uncoded_run(single, Workload::from(single));
  CHECK(small.load == Rational(1));
  check_exact(single, small);
}

TEST_CASE("uncoded unicasts come from the lowest holder") {
  auto cfg = make_config(Scheme::Uncoded, 4, 2, 6, 4, 256);
  auto outcome = uncoded_run(cfg, Workload::from(cfg));
  for (const auto& m : outcome.trace.messages()) {
    CHECK(m.recipients.size() == 1);
    CHECK(m.bits == 256);
  }
  CHECK(outcome.load == Rational(3));
  check_exact(cfg, outcome);
}

TEST_CASE("compression loads in both regimes") {
  auto flat = make_config(Scheme::Compression, 3, 2, 6, 3, 1024);
  auto a = compression_run(flat, Workload::from(flat));
  CHECK(a.load == Rational(1));
  check_exact(flat, a);

  auto steep = make_config(Scheme::Compression, 4, 1, 8, 4, 1024);
  auto b = compression_run(steep, Workload::from(steep));
  CHECK(b.load == Rational(3));
  check_exact(steep, b);

  auto half = make_config(Scheme::Compression, 4, 2, 6, 4, 1024);
  auto c = compression_run(half, Workload::from(half));
  CHECK(c.load == Rational(1));
  check_exact(half, c);
}

TEST_CASE("compression sends only pre-combined T-bit values") {
  auto cfg = make_config(Scheme::Compression, 5, 2, 10, 5, 128);
  auto outcome = compression_run(cfg, Workload::from(cfg));
  for (const auto& m : outcome.trace.messages()) CHECK(m.bits == 128);
  check_exact(cfg, outcome);
}

TEST_CASE("cdc loads") {
  auto three = make_config(Scheme::Cdc, 3, 2, 6, 3, 1024);
  auto a = cdc_run(three, Workload::from(three));
  CHECK(a.load == Rational(1));
  CHECK(a.trace.size() == 3);
  check_exact(three, a);

  auto four = make_config(Scheme::Cdc, 4, 2, 6, 4, 1024);
  auto b = cdc_run(four, Workload::from(four));
  CHECK(b.load == Rational(3, 2));
  check_exact(four, b);
}

TEST_CASE("cdc packets decode to the sender-side values") {
  // Each receiver recovers exactly the packet its peers built, over random configs.
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const int K = 3 + static_cast<int>(rng() % 3);
    const int r = 1 + static_cast<int>(rng() % (K - 1));
    const int N = static_cast<int>(binomial(K, r));
    auto cfg = make_config(Scheme::Cdc, K, r, N, K, 64 * (1 + static_cast<int>(rng() % 3)));
    cfg.seed = rng();
    cfg.group = ccdc::testing::kGroups[rng() % 3];
    CAPTURE(K);
    CAPTURE(r);
    RunContext ctx(cfg, Workload::from(cfg), cdc_placement(cfg));
    for (const NodeSet& group : lex_subsets(K, r + 1)) {
      Contributions contributions;
      for (int h : group.members()) {
        for (int t : group.without(h).members()) contributions[h].push_back(cdc_packet(ctx, h, group, t, 1));
      }
      auto recovered = coded_exchange(group, contributions, ctx.trace, MessageTag{Scheme::Cdc, 0, 0, 0, 1});
      REQUIRE(recovered.size() == group.members().size());
      for (const auto& [k, packet] : recovered) {
        for (int h : group.without(k).members()) {
          CHECK(packet.payload == cdc_packet(ctx, h, group, k, 1).payload);
        }
      }
    }
  }
}

TEST_CASE("coded_exchange rejects malformed contributions") {
  auto cfg = make_config(Scheme::Cdc, 3, 2, 6, 3, 64);
  RunContext ctx(cfg, Workload::from(cfg), cdc_placement(cfg));
  NodeSet group{1, 2, 3};
  Contributions contributions;
  for (int h : group.members()) {
    for (int t : group.without(h).members()) contributions[h].push_back(cdc_packet(ctx, h, group, t, 1));
  }
  auto missing = contributions;
  missing.erase(2);
  CHECK_THROWS_AS(coded_exchange(group, missing, ctx.trace, {}), ProtocolError);
  auto extra = contributions;
  extra[1].push_back(extra[1].front());
  CHECK_THROWS_AS(coded_exchange(group, extra, ctx.trace, {}), ProtocolError);
  CHECK_THROWS_AS(cdc_packet(ctx, 3, group, 3, 1), ParameterError);
  CHECK(ctx.trace.size() == 0);
}

TEST_CASE("every baseline matches its oracle across groups and families") {
  for (Scheme s : {Scheme::Uncoded, Scheme::Compression, Scheme::Cdc}) {
    for (Group g : ccdc::testing::kGroups) {
      for (auto family : {WorkloadFamily::Prf, WorkloadFamily::Linear}) {
        auto cfg = make_config(s, 4, 2, 12, 8, 128, 2);
        cfg.group = g;
        cfg.workload = family;
        cfg.seed = 5;
        check_exact(cfg, run_scheme(cfg, Workload::from(cfg)));
      }
    }
  }
}

TEST_CASE("invalid configurations are rejected before running") {
  CHECK_THROWS_AS(cdc_run(make_config(Scheme::Cdc, 4, 2, 5, 4, 64), Workload{}), ConfigError);
  CHECK_THROWS_AS(compression_run(make_config(Scheme::Compression, 4, 2, 6, 3, 64), Workload{}), ConfigError);
  CHECK_THROWS_AS(uncoded_run(make_config(Scheme::Uncoded, 4, 2, 5, 4, 64), Workload{}), ConfigError);
}
