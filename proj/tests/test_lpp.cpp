#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "latticegrow/lpp.hpp"
#include "latticegrow/oracle.hpp"
#include "latticegrow/rng.hpp"
#include "latticegrow/stats.hpp"

using namespace latticegrow;

namespace {

WeightField verts(const DistributionSpec& spec, std::uint64_t seed, int d = 2) {
  return make_field(spec, seed, Attachment::Vertex, d);
}

// T(y, z) on the same field: maximal sum over oriented paths y -> z, y excluded.
double shifted_lpp(const WeightField& f, const Vertex& y, const Vertex& z) {
  const std::int64_t a = z[0] - y[0], b = z[1] - y[1];
  std::vector<double> row(static_cast<std::size_t>(b + 1), 0.0);
  for (std::int64_t i = 0; i <= a; ++i) {
    for (std::int64_t j = 0; j <= b; ++j) {
      if (i == 0 && j == 0) continue;
      double best = -1.0;
      if (i > 0) best = row[static_cast<std::size_t>(j)];
      if (j > 0) best = std::max(best, row[static_cast<std::size_t>(j - 1)]);
      row[static_cast<std::size_t>(j)] = best + f.weight_at(Vertex{y[0] + i, y[1] + j});
    }
  }
  return row[static_cast<std::size_t>(b)];
}

}  // namespace

TEST_CASE("axis values are cumulative sums without the initial vertex") {
  const auto f = verts(DistributionSpec::exponential(1.0), 5);
  const auto map = lpp_dp(f, Vertex{20, 20});
  CHECK(map.time(0, 0) == 0.0);
  double sum = 0.0;
  for (std::int64_t i = 1; i <= 20; ++i) {
    sum += f.weight_at(Vertex{i, 0});
    CHECK(map.time(i, 0) == sum);
  }
}

TEST_CASE("constant weights count the vertices after the start") {
  const auto f = verts(DistributionSpec::constant(1.0), 0);
  const auto map = lpp_dp(f, Vertex{7, 4});
  for (std::int64_t i = 0; i <= 7; ++i) {
    for (std::int64_t j = 0; j <= 4; ++j) CHECK(map.time(i, j) == static_cast<double>(i + j));
  }
  const auto m3 = lpp_dp(verts(DistributionSpec::constant(1.0), 0, 3), Vertex{2, 3, 1});
  CHECK(m3.time(Vertex{2, 3, 1}) == 6.0);
}

TEST_CASE("every entry matches full enumeration") {
  const auto f = verts(DistributionSpec::uniform(0.5, 1.5), 11);
  const auto map = lpp_dp(f, Vertex{6, 6});
  for (std::int64_t i = 0; i <= 6; ++i) {
    for (std::int64_t j = 0; j <= 6; ++j) {
      const auto e = brute_force_lpp(f, Vertex{i, j});
      CHECK(map.time(i, j) == e.time);
      CHECK(e.paths == oriented_path_count(Vertex{i, j}));
    }
  }
  CHECK(brute_force_lpp(f, Vertex{6, 6}).paths == 924);
}

TEST_CASE("recursion holds at every cell") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto f = verts(DistributionSpec::geometric(0.5), seed);
    const auto map = lpp_dp(f, Vertex{30, 25});
    for (std::int64_t i = 0; i <= 30; ++i) {
      for (std::int64_t j = 0; j <= 25; ++j) {
        if (i == 0 && j == 0) continue;
        double best = -INFINITY;
        if (i > 0) best = map.time(i - 1, j);
        if (j > 0) best = std::max(best, map.time(i, j - 1));
        CHECK(map.time(i, j) == best + f.weight_at(Vertex{i, j}));
      }
    }
  }
}

TEST_CASE("superadditivity on random triples") {
  SplitMix64 rng(3);
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const auto f = verts(DistributionSpec::exponential(1.0), seed);
    const auto map = lpp_dp(f, Vertex{40, 40});
    for (int k = 0; k < 50; ++k) {
      Vertex y{static_cast<std::int64_t>(rng.below(30)), static_cast<std::int64_t>(rng.below(30))};
      Vertex z{y[0] + static_cast<std::int64_t>(rng.below(11)), y[1] + static_cast<std::int64_t>(rng.below(11))};
      CHECK(map.time(z) >= map.time(y) + shifted_lpp(f, y, z) - 1e-12);
    }
  }
}

TEST_CASE("transposed field reproduces the transposed table") {
  const auto f = verts(DistributionSpec::exponential(1.0), 8);
  const auto t = f.permuted({1, 0});
  const auto a = lpp_dp(f, Vertex{12, 9});
  const auto b = lpp_dp(t, Vertex{9, 12});
  for (std::int64_t i = 0; i <= 12; ++i) {
    for (std::int64_t j = 0; j <= 9; ++j) CHECK(a.time(i, j) == b.time(j, i));
  }
}

TEST_CASE("geodesics") {
  const auto f = verts(DistributionSpec::uniform(0.5, 1.5), 11);
  const auto map = lpp_dp(f, Vertex{6, 6});
  const auto geo = lpp_geodesic(map, f, Vertex{6, 6});
  CHECK(geo.time == brute_force_lpp(f, Vertex{6, 6}).time);
  CHECK(geo.steps() == 12);
  double sum = 0.0;
  for (std::size_t i = 1; i < geo.vertices.size(); ++i) {
    const auto& a = geo.vertices[i - 1];
    const auto& b = geo.vertices[i];
    CHECK(b[0] >= a[0]);
    CHECK(b[1] >= a[1]);
    CHECK(adjacent(a, b));
    sum += f.weight_at(b);
  }
  CHECK(sum == doctest::Approx(geo.time).epsilon(1e-14));

  const auto axis = lpp_geodesic(map, f, Vertex{4, 0});
  CHECK(axis.vertices == std::vector<Vertex>{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});
  const auto zero = lpp_geodesic(map, f, Vertex{0, 0});
  CHECK(zero.steps() == 0);
  CHECK(zero.time == 0.0);

  // backtracking prefers x - e1, so the forward path runs up the e2 axis first
  const auto c = verts(DistributionSpec::constant(1.0), 0);
  const auto cmap = lpp_dp(c, Vertex{2, 2});
  const auto tie = lpp_geodesic(cmap, c, Vertex{2, 2});
  CHECK(tie.vertices == std::vector<Vertex>{{0, 0}, {0, 1}, {0, 2}, {1, 2}, {2, 2}});

  CHECK_THROWS_AS(lpp_geodesic(map, f, Vertex{7, 0}), std::out_of_range);
  CHECK_THROWS_AS(lpp_dp(f, Vertex{-1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(lpp_dp(make_field(DistributionSpec::exponential(1), 1, Attachment::Edge, 2), Vertex{2, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(map.time(7, 0), std::out_of_range);
}

TEST_CASE("closed-form shapes") {
  const auto e = ExactShape::exponential();
  CHECK(exact_g(e, 1, 1) == 4.0);
  CHECK(exact_g(e, 1, 0) == 1.0);
  const auto g = ExactShape::geometric(0.5);
  CHECK(exact_g(g, 1, 1) == doctest::Approx(4 + 2 * std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(exact_g(e, -1, 1), std::domain_error);
  CHECK_THROWS_AS(ExactShape::geometric(1.0), std::invalid_argument);

  for (const auto& s : {e, g, ExactShape::geometric(0.2)}) {
    for (double x1 : {0.0, 0.3, 1.0, 2.5}) {
      for (double x2 : {0.0, 0.7, 1.0, 4.0}) {
        CHECK(exact_g(s, x1, x2) == doctest::Approx(exact_g(s, x2, x1)).epsilon(1e-14));
        for (double a : {0.5, 2.0, 10.0}) {
          const double lhs = exact_g(s, a * x1, a * x2);
          const double rhs = a * exact_g(s, x1, x2);
          CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
        }
      }
    }
  }
  CHECK(ExactShape::available_for(DistributionSpec::exponential(1.0)));
  CHECK(ExactShape::available_for(DistributionSpec::geometric(0.3)));
  CHECK_FALSE(ExactShape::available_for(DistributionSpec::exponential(2.0)));
  CHECK_FALSE(ExactShape::available_for(DistributionSpec::uniform(0, 1)));
  CHECK(ExactShape::for_spec(DistributionSpec::geometric(0.3)).p == 0.3);
  CHECK_THROWS_AS(ExactShape::for_spec(DistributionSpec::two_point(0.5)), std::invalid_argument);
}

TEST_CASE("boundary asymptote") {
  CHECK(martin_asymptote(1, 1, 0.04) == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(martin_asymptote(2.5, 0, 0.3) == 2.5);
  for (double a : {1e-6, 0.01, 0.04, 0.5, 1.0, 3.0}) {
    CHECK(exact_g(ExactShape::exponential(), 1, a) - martin_asymptote(1, 1, a) ==
          doctest::Approx(a).epsilon(1e-9));
  }
  CHECK_THROWS_AS(martin_asymptote(1, 1, 0), std::domain_error);
  CHECK_THROWS_AS(martin_asymptote(1, -1, 0.1), std::domain_error);
}

TEST_CASE("exponential diagonal means approach 4 from below") {
  const std::int64_t trials = 200;
  double prev_mean = 0.0, prev_se = 0.0;
  for (std::int64_t n : {8, 16, 32, 64}) {
    std::vector<double> v;
    for (std::int64_t k = 0; k < trials; ++k) {
      const auto f = verts(DistributionSpec::exponential(1.0), child_seed(99, 1, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k)));
      v.push_back(lpp_dp(f, Vertex{n, n}).time(n, n) / static_cast<double>(n));
    }
    const auto s = summarize(v);
    CHECK(s.mean <= 4.0 + 2 * s.std_error);
    if (prev_mean > 0.0) CHECK(s.mean >= prev_mean - 2 * std::hypot(s.std_error, prev_se));
    prev_mean = s.mean;
    prev_se = s.std_error;
  }
}

TEST_CASE("csv export") {
  const auto map = lpp_dp(verts(DistributionSpec::constant(1.0), 0), Vertex{1, 1});
  std::ostringstream out;
  write_csv(out, map);
  const auto text = out.str();
  CHECK(text.rfind("x1,x2,T\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
