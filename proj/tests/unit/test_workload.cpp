#include <doctest.h>

#include <set>

#include "ccdc/compressed.hpp"
#include "ccdc/error.hpp"
#include "ccdc/workload.hpp"
#include "test_util.hpp"

using namespace ccdc;
using ccdc::testing::make_config;

TEST_CASE("map_value is deterministic and T bits long") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 1024);
  for (auto family : {WorkloadFamily::Prf, WorkloadFamily::Linear}) {
    Workload w{family, 11, 64};
    auto a = map_value(w, cfg, FunctionRef{2, 3}, FileRef{2, 5});
    auto b = map_value(w, cfg, FunctionRef{2, 3}, FileRef{2, 5});
    CHECK(a == b);
    CHECK(a.bit_size() == 1024);
    CHECK_FALSE(a.is_zero());
    Workload other{family, 12, 64};
    CHECK(map_value(other, cfg, FunctionRef{2, 3}, FileRef{2, 5}) != a);
  }
}

TEST_CASE("map_value rejects cross-job pairs and misaligned linear T") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 1024);
  Workload w{};
  CHECK_THROWS_AS(map_value(w, cfg, FunctionRef{1, 1}, FileRef{2, 1}), ParameterError);
  auto bad = make_config(Scheme::Ccdc, 4, 2, 6, 4, 1000);
  Workload lin{WorkloadFamily::Linear, 1, 8};
  CHECK_THROWS_AS(map_value(lin, bad, FunctionRef{1, 1}, FileRef{1, 1}), ConfigError);
}

TEST_CASE("prf values are pairwise distinct on the acceptance configs") {
  // Brute force: every (job, function, file) triple gives a different value.
  for (auto cfg : {make_config(Scheme::Ccdc, 3, 2, 6, 3, 3072), make_config(Scheme::Ccdc, 4, 2, 6, 4, 1024)}) {
    Workload w{WorkloadFamily::Prf, 1, 64};
    std::set<std::string> seen;
    int count = 0;
    for (int j = 1; j <= cfg.jobs(); ++j) {
      for (int q = 1; q <= cfg.Q; ++q) {
        for (int n = 1; n <= cfg.N; ++n) {
          seen.insert(map_value(w, cfg, FunctionRef{j, q}, FileRef{j, n}).to_hex());
          ++count;
        }
      }
    }
    CHECK(static_cast<int>(seen.size()) == count);
  }
}

TEST_CASE("linear map of a zero file is zero") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 256);
  Workload w{WorkloadFamily::Linear, 5, 16};
  std::vector<std::uint32_t> zeros(16, 0);
  CHECK(linear_map(w, cfg, FunctionRef{1, 2}, zeros).is_zero());
  Workload none{WorkloadFamily::Linear, 5, 0};
  CHECK(map_value(none, cfg, FunctionRef{1, 2}, FileRef{1, 3}).is_zero());
}

TEST_CASE("linear map commutes with wordwise file addition") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 512);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    Workload w{WorkloadFamily::Linear, seed, 48};
    for (int q = 1; q <= cfg.Q; ++q) {
      FunctionRef f{1, q};
      auto a = linear_file_payload(w, FileRef{1, 1 + static_cast<int>(seed % 6)});
      auto b = linear_file_payload(w, FileRef{1, 1 + static_cast<int>((seed + 1) % 6)});
      REQUIRE(a.size() == 48);
      std::vector<std::uint32_t> sum(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) sum[i] = a[i] + b[i];
      CHECK(linear_map(w, cfg, f, sum) == group_add(Group::Add32, linear_map(w, cfg, f, a), linear_map(w, cfg, f, b)));
    }
  }
}

TEST_CASE("linear file payload feeds map_value") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 256);
  Workload w{WorkloadFamily::Linear, 3, 32};
  FileRef file{2, 4};
  FunctionRef f{2, 1};
  CHECK(map_value(w, cfg, f, file) == linear_map(w, cfg, f, linear_file_payload(w, file)));
}

TEST_CASE("Mapper enforces the placement and counts work") {
  auto cfg = make_config(Scheme::Ccdc, 4, 2, 6, 4, 256);
  Workload w{};
  auto placement = ccdc_placement(cfg);
  Mapper mapper(w, cfg, placement);

  std::vector<FileRef> files{{1, 1}, {1, 2}};
  std::vector<FunctionRef> one{{1, 3}};
  auto table = mapper.map_files(1, files, one);
  CHECK(table.size() == 2);
  for (const auto& [key, value] : table) CHECK(value == map_value(w, cfg, key.first, key.second));
  CHECK(mapper.work()[0] == 2);

  CHECK(mapper.map_files(1, files, std::vector<FunctionRef>{}).empty());

  // Node 4 stores nothing of job 1; node 3 lacks batch {1,2}.
  CHECK_THROWS_AS(mapper.map_one(4, FunctionRef{1, 1}, FileRef{1, 1}), PlacementError);
  CHECK_THROWS_AS(mapper.map_files(3, files, one), PlacementError);

  std::vector<int> batch{1, 2};
  auto sum = mapper.precombine(2, FunctionRef{1, 3}, batch);
  CHECK(sum == group_add(cfg.group, map_value(w, cfg, FunctionRef{1, 3}, FileRef{1, 1}),
                         map_value(w, cfg, FunctionRef{1, 3}, FileRef{1, 2})));
}

TEST_CASE("mix64 is a bijection on sampled inputs") {
  std::set<std::uint64_t> out;
  for (std::uint64_t x = 0; x < 4096; ++x) out.insert(mix64(x));
  CHECK(out.size() == 4096);
  CHECK(mix64(0) != 0);
}
