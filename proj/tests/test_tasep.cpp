#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "latticegrow/lpp.hpp"
#include "latticegrow/rng.hpp"
#include "latticegrow/stats.hpp"
#include "latticegrow/tasep.hpp"

using namespace latticegrow;

namespace {

WeightField exp_field(std::uint64_t seed) {
  return make_field(DistributionSpec::exponential(1.0), seed, Attachment::Vertex, 2);
}

}  // namespace

TEST_CASE("a lone particle accumulates its clocks") {
  const std::vector<double> clocks{0.5, 1.2, 0.1};
  const auto t = tasep_from_clocks(clocks, 1, 3);
  CHECK(t.at(1, 1) == 0.5);
  CHECK(t.at(1, 2) == 1.7);
  CHECK(t.at(1, 3) == doctest::Approx(1.8).epsilon(1e-15));
  CHECK_THROWS_AS(tasep_from_clocks(clocks, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(t.at(2, 1), std::out_of_range);
}

TEST_CASE("a particle waits for the one ahead") {
  // particle 2's first step needs particle 1's first step
  const std::vector<double> clocks{3.0, 1.0, 0.5, 0.25};
  const auto t = tasep_from_clocks(clocks, 2, 2);
  CHECK(t.at(2, 1) == 3.5);
  CHECK(t.at(2, 2) == std::max(t.at(1, 2), t.at(2, 1)) + 0.25);
}

TEST_CASE("coupled tables equal the LPP map bit for bit") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = exp_field(seed);
    const auto table = tasep_run(LppCoupled{f}, 40, 30);
    const auto map = lpp_dp(f, Vertex{29, 39});
    for (std::int64_t k = 1; k <= 40; ++k) {
      for (std::int64_t n = 1; n <= 30; ++n) CHECK(table.at(k, n) == map.time(n - 1, k - 1));
    }
    // first particle runs along the e1 axis
    for (std::int64_t n = 1; n <= 30; ++n) CHECK(table.at(1, n) == map.time(n - 1, 0));
  }
  CHECK_THROWS_AS(tasep_run(LppCoupled{make_field(DistributionSpec::exponential(2.0), 1, Attachment::Vertex, 2)}, 4, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(tasep_run(LppCoupled{make_field(DistributionSpec::exponential(1.0), 1, Attachment::Edge, 2)}, 4, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(tasep_run(IndependentClocks{1}, 0, 4), std::invalid_argument);
}

TEST_CASE("step times increase and respect exclusion") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto t = tasep_run(IndependentClocks{seed}, 30, 30);
    CHECK(t.at(1, 1) == 0.0);
    for (std::int64_t k = 1; k <= 30; ++k) {
      for (std::int64_t n = 1; n <= 30; ++n) {
        if (n > 1) CHECK(t.at(k, n) > t.at(k, n - 1));
        if (k > 1) CHECK(t.at(k, n) >= t.at(k - 1, n));
      }
    }
  }
}

TEST_CASE("positions never collide") {
  const auto t = tasep_run(IndependentClocks{3}, 20, 60);
  for (double time = 0.0; time < 15.0; time += 0.37) {
    for (std::int64_t k = 2; k <= 20; ++k) CHECK(t.position(k, time) < t.position(k - 1, time));
  }
  CHECK(t.position(1, 0.0) == 1);
  CHECK(t.position(2, 0.0) == -1);
  CHECK_THROWS_AS(t.position(1, 1e9), CurrentUndetermined);
}

TEST_CASE("independent clocks: the first particle moves at unit speed") {
  // s(1, n) sums n - 1 Exp(1) clocks since the first jump takes no time
  const int runs = 1000;
  const std::int64_t n = 100;
  std::vector<double> v;
  for (int r = 0; r < runs; ++r) {
    v.push_back(tasep_run(IndependentClocks{static_cast<std::uint64_t>(r)}, 1, n).at(1, n) / static_cast<double>(n - 1));
  }
  const auto s = summarize(v);
  CHECK(std::abs(s.mean - 1.0) <= 3 * std::sqrt(1.0 / (n - 1) / runs));
  CHECK(tasep_run(IndependentClocks{4}, 3, 3).coupled_field() == std::nullopt);
  CHECK(tasep_run(IndependentClocks{4}, 5, 5).at(5, 5) == tasep_run(IndependentClocks{4}, 5, 5).at(5, 5));
}

TEST_CASE("current") {
  const auto f = exp_field(5);
  const auto table = tasep_run(LppCoupled{f}, 32, 32);
  const auto map = lpp_dp(f, Vertex{31, 31});
  CHECK(current_at(table, 0.0) == 0);
  std::int64_t prev = 0;
  for (double t = 0.0; t < table.at(32, 32); t += 0.05) {
    const auto c = current_at(table, t);
    CHECK(c >= prev);
    prev = c;
  }
  for (std::int64_t n = 1; n < 31; ++n) {
    const double t = map.time(n, n);
    CHECK(current_at(table, t) >= n);
    CHECK(coupling_equivalence(table, map, n, t));
    CHECK(coupling_equivalence(table, map, n, std::nextafter(t, 0.0)));
    CHECK(current_at(table, std::nextafter(t, 0.0)) < n);
  }
  CHECK(coupling_equivalence(table, map, 2, 0.0));
  CHECK(map.time(2, 2) > 0.0);
  CHECK(current_at(table, 0.0) < 2);

  CHECK_THROWS_AS(current_at(table, table.at(32, 32)), CurrentUndetermined);
  CHECK_THROWS_AS(current_at(table, -1.0), std::domain_error);
  const auto other = lpp_dp(exp_field(6), Vertex{31, 31});
  CHECK_THROWS_AS(coupling_equivalence(table, other, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(coupling_equivalence(table, map, 40, 1.0), std::out_of_range);
}

TEST_CASE("random probes of the current identity") {
  SplitMix64 rng(8);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto f = exp_field(100 + seed);
    const auto table = tasep_run(LppCoupled{f}, 64, 64);
    const auto map = lpp_dp(f, Vertex{63, 63});
    const double horizon = table.at(64, 64);
    for (int probe = 0; probe < 100; ++probe) {
      const auto n = static_cast<std::int64_t>(1 + rng.below(62));
      const double t = rng.uniform() * horizon;
      CHECK(coupling_equivalence(table, map, n, t));
    }
  }
}

TEST_CASE("csv") {
  const std::vector<double> clocks{0.5, 1.0};
  const auto t = tasep_from_clocks(clocks, 1, 2);
  std::ostringstream out;
  write_csv(out, t);
  CHECK(out.str().rfind("k,n,s\n1,1,", 0) == 0);
  const auto run = tasep_run(IndependentClocks{1}, 8, 8);
  std::ostringstream cur;
  const std::vector<double> ts{0.0, 0.5};
  write_current_csv(cur, run, ts);
  CHECK(cur.str().rfind("t,c\n", 0) == 0);
}
