#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "latticegrow/oracle.hpp"
#include "latticegrow/rng.hpp"

using namespace latticegrow;

TEST_CASE("path counts") {
  CHECK(oriented_path_count(Vertex{6, 6}) == 924);
  CHECK(oriented_path_count(Vertex{0, 0}) == 1);
  CHECK(oriented_path_count(Vertex{5, 0}) == 1);
  CHECK(oriented_path_count(Vertex{3, 2}) == 10);
  CHECK(oriented_path_count(Vertex{30, 30}) == 118264581564861424ULL);
  CHECK_THROWS_AS(oriented_path_count(Vertex{-1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(oriented_path_count(Vertex{40, 40}), std::overflow_error);
}

TEST_CASE("tiny cases by hand") {
  const auto c = make_field(DistributionSpec::constant(1.0), 0, Attachment::Edge, 2);
  const LatticeBox box(2, 1);
  CHECK(brute_force_fpp(c, box, Vertex{-1, -1}, Vertex{1, 1}) == 4.0);
  CHECK(brute_force_fpp(c, box, Vertex{0, 0}, Vertex{0, 0}) == 0.0);

  const auto v = make_field(DistributionSpec::constant(2.0), 0, Attachment::Vertex, 2);
  const auto e = brute_force_lpp(v, Vertex{2, 1});
  CHECK(e.time == 6.0);
  CHECK(e.paths == 3);
}

TEST_CASE("solvers agree with enumeration over 100 seeds") {
  for (const auto& spec : {DistributionSpec::uniform(0.5, 1.5), DistributionSpec::geometric(0.5)}) {
    CAPTURE(spec.token());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto ef = make_field(spec, child_seed(seed, 1, 0, 0), Attachment::Edge, 2);
      const LatticeBox box(2, 2);
      const auto map = fpp_dijkstra(ef, origin(2), SettledCount{box.size()}, box);
      for (const Vertex& t : {Vertex{2, 1}, Vertex{-1, 2}, Vertex{-2, -2}}) {
        CHECK(map.time(t) == brute_force_fpp(ef, box, origin(2), t));
      }
      const auto vf = make_field(spec, child_seed(seed, 2, 0, 0), Attachment::Vertex, 2);
      const auto lpp = lpp_dp(vf, Vertex{5, 5});
      CHECK(lpp.time(5, 5) == brute_force_lpp(vf, Vertex{5, 5}).time);
      CHECK(lpp.time(5, 2) == brute_force_lpp(vf, Vertex{5, 2}).time);
    }
  }
}

TEST_CASE("budgets refuse rather than truncate") {
  const auto ef = make_field(DistributionSpec::uniform(0.5, 1.5), 1, Attachment::Edge, 2);
  CHECK_THROWS_AS(brute_force_fpp(ef, LatticeBox(2, 20), origin(2), Vertex{1, 1}), BudgetExceeded);
  EnumerationBudget tight;
  tight.max_paths = 10;
  CHECK_THROWS_AS(brute_force_fpp(ef, LatticeBox(2, 3), origin(2), Vertex{3, 3}, tight), BudgetExceeded);
  const auto vf = make_field(DistributionSpec::uniform(0.5, 1.5), 1, Attachment::Vertex, 2);
  CHECK_THROWS_AS(brute_force_lpp(vf, Vertex{6, 6}, tight), BudgetExceeded);
  CHECK_NOTHROW(brute_force_lpp(vf, Vertex{2, 2}, tight));
}

TEST_CASE("argument checks") {
  const auto zero = make_field(DistributionSpec::constant(0.0), 1, Attachment::Edge, 2);
  CHECK_THROWS_AS(brute_force_fpp(zero, LatticeBox(2, 2), origin(2), Vertex{1, 1}), std::invalid_argument);
  const auto ef = make_field(DistributionSpec::uniform(0.5, 1.5), 1, Attachment::Edge, 2);
  CHECK_THROWS_AS(brute_force_fpp(ef, LatticeBox(2, 2), origin(2), Vertex{3, 0}), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_lpp(ef, Vertex{2, 2}), std::invalid_argument);
}
