#include <doctest.h>

#include <random>

#include "ccdc/baseline.hpp"
#include "ccdc/compressed.hpp"
#include "ccdc/error.hpp"
#include "ccdc/placement.hpp"
#include "test_util.hpp"

using namespace ccdc;
using ccdc::testing::make_config;

namespace {

std::set<int> files_of(const Placement& p, int node, int job) {
  std::set<int> out;
  for (const auto& f : p.stored(node)) {
    if (f.job == job) out.insert(f.index);
  }
  return out;
}

std::set<int> range_set(int first, int last) {
  std::set<int> out;
  for (int n = first; n <= last; ++n) out.insert(n);
  return out;
}

}  // namespace

TEST_CASE("compression placement with two batches of unequal size") {
  auto cfg = make_config(Scheme::Compression, 3, 2, 6, 3, 1024);
  auto p = compression_placement(cfg);
  CHECK(p.batches().size() == 2);
  CHECK(p.batch(1, NodeSet{1, 3}) == std::vector<int>{1, 2, 3, 4});
  CHECK(p.batch(1, NodeSet{2}) == std::vector<int>{5, 6});
  CHECK(files_of(p, 1, 1) == range_set(1, 4));
  CHECK(files_of(p, 3, 1) == range_set(1, 4));
  CHECK(files_of(p, 2, 1) == range_set(5, 6));
  CHECK(placement_violations(p, cfg).empty());
}

TEST_CASE("compression placement round robin with mu = 1/K") {
  auto cfg = make_config(Scheme::Compression, 4, 1, 8, 4, 1024);
  auto p = compression_placement(cfg);
  REQUIRE(p.batches().size() == 4 * static_cast<std::size_t>(cfg.jobs()));
  for (int k = 1; k <= 4; ++k) {
    CHECK(p.batch(1, NodeSet{k}) == std::vector<int>{2 * k - 1, 2 * k});
    CHECK(files_of(p, k, 1) == range_set(2 * k - 1, 2 * k));
  }
}

TEST_CASE("cdc placement: one batch per r-subset") {
  auto cfg = make_config(Scheme::Cdc, 3, 2, 6, 3, 1024);
  auto p = cdc_placement(cfg);
  CHECK(p.batches().size() == 3);
  CHECK(p.batch(1, NodeSet{1, 2}) == std::vector<int>{1, 2});
  CHECK(p.batch(1, NodeSet{1, 3}) == std::vector<int>{3, 4});
  CHECK(p.batch(1, NodeSet{2, 3}) == std::vector<int>{5, 6});
  for (int k = 1; k <= 3; ++k) CHECK(files_of(p, k, 1).size() == 4);
  CHECK(files_of(p, 1, 1) == range_set(1, 4));
  CHECK(placement_violations(p, cfg).empty());

  auto cfg4 = make_config(Scheme::Cdc, 4, 2, 6, 4, 1024);
  auto p4 = cdc_placement(cfg4);
  CHECK(p4.batches().size() == 6 * 4);
  for (const auto& [key, files] : p4.batches()) CHECK(files.size() == 1);
  for (int k = 1; k <= 4; ++k) CHECK(p4.stored(k).size() == 12);
}

TEST_CASE("ccdc placement for the four-node example") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 1024);
  auto p = ccdc_placement(cfg);
  CHECK(p.jobs() == 4);
  CHECK(p.job_subset(1) == NodeSet{1, 2, 3});
  CHECK(p.job_subset(2) == NodeSet{1, 2, 4});
  CHECK(p.job_subset(3) == NodeSet{1, 3, 4});
  CHECK(p.job_subset(4) == NodeSet{2, 3, 4});
  for (int k = 1; k <= 4; ++k) CHECK(p.stored(k).size() == 12);
  CHECK(p.batch(1, NodeSet{1, 2}) == std::vector<int>{1, 2});
  CHECK(p.batch(1, NodeSet{1, 3}) == std::vector<int>{3, 4});
  CHECK(p.batch(1, NodeSet{2, 3}) == std::vector<int>{5, 6});
  CHECK(files_of(p, 4, 1).empty());
  CHECK(placement_violations(p, cfg).empty());
  CHECK(ccdc_job_for(cfg, 0, NodeSet{1, 3, 4}) == 3);
}

TEST_CASE("ccdc placement for three nodes") {
  auto cfg = make_config(Scheme::Ccdc, 3, 2, 6, 3, 1024);
  auto p = ccdc_placement(cfg);
  CHECK(p.jobs() == 1);
  CHECK(p.job_subset(1) == NodeSet{1, 2, 3});
  CHECK(p.batches().size() == 3);
  for (const auto& [key, files] : p.batches()) CHECK(files.size() == 2);
}

TEST_CASE("ccdc placement with gamma repeats the subset cycle") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 1024, 2);
  auto p = ccdc_placement(cfg);
  CHECK(p.jobs() == 8);
  for (int j = 1; j <= 4; ++j) CHECK(p.job_subset(j) == p.job_subset(j + 4));
  CHECK(ccdc_job_for(cfg, 1, NodeSet{1, 2, 3}) == 5);
  CHECK(placement_violations(p, cfg).empty());
}

TEST_CASE("placement validity over many configurations") {
  for (int K = 2; K <= 7; ++K) {
    for (int r = 1; r < K; ++r) {
      for (int gamma = 1; gamma <= 2; ++gamma) {
        const int N = 2 * (r + 1);
        auto cfg = make_config(Scheme::Ccdc, K, r, N, K, 64, gamma);
        CAPTURE(K);
        CAPTURE(r);
        auto p = ccdc_placement(cfg);
        CHECK(placement_violations(p, cfg).empty());
        // Each node stores mu*J*N files exactly.
        for (int k = 1; k <= K; ++k) {
          CHECK(Rational(static_cast<std::int64_t>(p.stored(k).size())) == cfg.mu() * cfg.jobs() * N);
        }
        for (int j = 1; j <= cfg.jobs(); ++j) {
          for (int n = 1; n <= N; ++n) {
            auto holders = p.holders(FileRef{j, n});
            CHECK(static_cast<int>(holders.size()) == r);
            for (int h : holders) CHECK(p.job_subset(j).contains(h));
          }
        }
      }
    }
  }
}

TEST_CASE("placement_violations detects broken placements") {
  auto cfg = make_config(Scheme::Ccdc, 3, 2, 6, 3, 1024);

  Placement missing(3, 1, 6);
  missing.set_job_subset(1, NodeSet{1, 2, 3});
  missing.add_batch(1, NodeSet{1, 2}, {1, 2});
  missing.add_batch(1, NodeSet{1, 3}, {3, 4});
  CHECK_FALSE(placement_violations(missing, cfg).empty());

  Placement over(3, 1, 6);
  over.set_job_subset(1, NodeSet{1, 2, 3});
  over.add_batch(1, NodeSet{1, 2, 3}, {1, 2, 3, 4, 5, 6});
  CHECK_FALSE(placement_violations(over, cfg).empty());
}

TEST_CASE("reducer assignment uses contiguous blocks") {
  auto four = assign_reducers(4, 4, 4);
  for (int k = 1; k <= 4; ++k) {
    for (int j = 1; j <= 4; ++j) CHECK(four.functions(k, j) == std::vector<int>{k});
  }
  auto three = assign_reducers(3, 3, 1);
  for (int k = 1; k <= 3; ++k) CHECK(three.functions(k, 1) == std::vector<int>{k});
  auto two = assign_reducers(2, 4, 3);
  CHECK(two.functions(1, 2) == std::vector<int>{1, 2});
  CHECK(two.functions(2, 2) == std::vector<int>{3, 4});
  CHECK(two.owner(FunctionRef{3, 3}) == 2);
  CHECK_THROWS_AS(assign_reducers(3, 4, 1), ConfigError);
}

TEST_CASE("reducer sets partition the functions of every job") {
  for (int K = 1; K <= 6; ++K) {
    for (int m = 1; m <= 3; ++m) {
      const int Q = K * m;
      auto a = assign_reducers(K, Q, 2);
      for (int j = 1; j <= 2; ++j) {
        std::set<int> seen;
        for (int k = 1; k <= K; ++k) {
          CHECK(static_cast<int>(a.functions(k, j).size()) == m);
          for (int q : a.functions(k, j)) {
            CHECK(seen.insert(q).second);
            CHECK(a.owner(FunctionRef{j, q}) == k);
          }
        }
        CHECK(static_cast<int>(seen.size()) == Q);
      }
    }
  }
}
