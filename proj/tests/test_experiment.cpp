#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "latticegrow/experiment.hpp"

using namespace latticegrow;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "latticegrow-tests" / name;
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ExperimentConfig config(const ExperimentConfig::Pairs& pairs, const std::string& out) {
  auto p = pairs;
  p["out"] = scratch(out).string();
  return ExperimentConfig::from_pairs(p);
}

std::string field_of(const ExperimentConfig& c) {
  try {
    c.validate();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

// All CSV files of a run, by name.
std::map<std::string, std::string> csv_files(const ExperimentResult& r) {
  std::map<std::string, std::string> out;
  for (const auto& f : r.files) {
    const fs::path p(f);
    if (p.extension() == ".csv") out[p.filename().string()] = slurp(p);
  }
  return out;
}

}  // namespace

TEST_CASE("kinds round-trip through their names") {
  for (auto k : {ExperimentKind::FppShape, ExperimentKind::LppShape, ExperimentKind::RadialG,
                 ExperimentKind::Exponents, ExperimentKind::FlatEdge, ExperimentKind::Eden,
                 ExperimentKind::Idla, ExperimentKind::TasepCoupling, ExperimentKind::OracleCheck}) {
    CHECK(parse_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_kind("shape"), ConfigError);
}

TEST_CASE("config text round-trips losslessly") {
  const auto a = ExperimentConfig::parse(
      "# exponent run\n"
      "kind = exponents\n"
      "dist = exp:1\n"
      "n-grid = 64..1024\n"
      "trials = 500\n"
      "seed = 18446744073709551615\n"
      "direction = 1, 0.3333333333333333\n"
      "t = 0.1\n"
      "workers = 2\n");
  CHECK(a.kind == ExperimentKind::Exponents);
  CHECK(a.n_grid == std::vector<std::int64_t>{64, 128, 256, 512, 1024});
  CHECK(a.seed == 18446744073709551615ULL);
  CHECK(a.direction[1] == 0.3333333333333333);
  CHECK(ExperimentConfig::parse(a.to_text()) == a);
  CHECK(ExperimentConfig::from_pairs(a.to_pairs()) == a);

  const auto b = ExperimentConfig::from_pairs({{"kind", "fpp-shape"}, {"n-grid", "3,5,9"}});
  CHECK(b.model == PassageModel::Fpp);
  CHECK(b.n_grid == std::vector<std::int64_t>{3, 5, 9});
  CHECK(ExperimentConfig::parse(b.to_text()) == b);
}

TEST_CASE("malformed configs name the field") {
  auto field = [](const ExperimentConfig::Pairs& p) {
    try {
      ExperimentConfig::from_pairs(p);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string();
  };
  CHECK(field({{"trials", "abc"}}) == "trials");
  CHECK(field({{"dist", "exp:-1"}}) == "dist");
  CHECK(field({{"colour", "red"}}) == "colour");
  CHECK(field({{"model", "mpp"}}) == "model");
  CHECK(field({{"n-grid", "8..4"}}) == "n-grid");
  CHECK(field({{"seed", "-3"}}) == "seed");
  CHECK_THROWS_AS(ExperimentConfig::parse("kind exponents\n"), ConfigError);
}

TEST_CASE("validation is kind specific") {
  auto c = ExperimentConfig::from_pairs({{"kind", "exponents"}, {"n-grid", "64..1024"}, {"trials", "0"}});
  CHECK(field_of(c) == "trials");
  c.trials = 100;
  CHECK(field_of(c) == "trials");
  c.trials = 200;
  CHECK(field_of(c) == "");
  c.n_grid = {64, 128, 256};
  CHECK(field_of(c) == "n-grid");
  c.n_grid = {64, 80, 96, 112};
  CHECK(field_of(c) == "n-grid");

  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "radial-g"}})) == "n-grid");
  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "radial-g"}, {"n-grid", "4"}, {"direction", "-1,1"}})) == "direction");
  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "fpp-shape"}})) == "t");
  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "fpp-shape"}, {"t", "5"}, {"dim", "3"}})) == "dim");
  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "flat-edge"}, {"n-grid", "300"}})) == "dist");
  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "flat-edge"}, {"n-grid", "20"}, {"dist", "twopoint:0.8"}})) == "n-grid");
  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "tasep-coupling"}, {"dist", "exp:2"}})) == "dist");
  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "oracle-check"}, {"size", "5"}})) == "size");
  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "oracle-check"}, {"dist", "const:0"}})) == "dist");
  CHECK(field_of(ExperimentConfig::from_pairs({{"kind", "oracle-check"}, {"workers", "0"}})) == "workers");

  CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("oracle check over 100 seeds finds no mismatch") {
  for (const char* dist : {"unif:0.5:1.5", "geom:0.5"}) {
    const auto r = run_experiment(config({{"kind", "oracle-check"}, {"dist", dist}, {"trials", "100"}}, "oracle"));
    CHECK(r.verified);
    const auto& res = r.summary["results"];
    CHECK(res["fpp_mismatches"] == 0);
    CHECK(res["lpp_mismatches"] == 0);
    CHECK(res["fpp_compared"].get<int>() == 100 * 49);
    CHECK(res["lpp_compared"].get<int>() == 100 * 49);
  }
}

TEST_CASE("radial-g reports the exact shape value") {
  const auto r = run_experiment(config({{"kind", "radial-g"}, {"n-grid", "8..32"}, {"trials", "20"}}, "radial"));
  const auto& s = r.summary;
  CHECK(s["kind"] == "radial-g");
  CHECK(s["results"]["exact_g"].get<double>() == 4.0);
  CHECK(s["results"].contains("fekete_negated"));
  CHECK(s["reproducibility"]["version"] == kVersion);
  CHECK(s["reproducibility"]["config"]["n-grid"] == "8,16,32");
  CHECK(fs::path(r.files.back()).filename() == "summary.json");
  const auto csv = csv_files(r);
  REQUIRE(csv.count("series.csv"));
  CHECK(csv.at("series.csv").rfind("n,value,stderr,trials\n", 0) == 0);
}

TEST_CASE("identical configs write identical files for any worker count") {
  const std::vector<ExperimentConfig::Pairs> runs{
      {{"kind", "radial-g"}, {"model", "fpp"}, {"dist", "unif:0.5:1.5"}, {"n-grid", "4,8,16"}, {"trials", "12"}},
      {{"kind", "exponents"}, {"n-grid", "4..32"}, {"trials", "200"}},
      {{"kind", "fpp-shape"}, {"t", "8"}, {"angles", "8"}, {"trials", "4"}},
      {{"kind", "lpp-shape"}, {"t", "10"}, {"angles", "5"}, {"trials", "4"}},
      {{"kind", "flat-edge"}, {"dist", "twopoint:0.8"}, {"n-grid", "50"}, {"trials", "4"}},
      {{"kind", "eden"}, {"n-grid", "50,100"}, {"trials", "3"}},
      {{"kind", "idla"}, {"n-grid", "50,100"}, {"trials", "3"}},
      {{"kind", "tasep-coupling"}, {"size", "12"}, {"trials", "3"}},
      {{"kind", "oracle-check"}, {"trials", "3"}, {"size", "2"}},
  };
  for (const auto& pairs : runs) {
    CAPTURE(pairs.at("kind"));
    auto one = config(pairs, "det-a");
    auto again = config(pairs, "det-b");
    auto many = config(pairs, "det-c");
    many.workers = 3;
    const auto a = run_experiment(one);
    const auto b = run_experiment(again);
    const auto c = run_experiment(many);
    CHECK(a.verified);
    const auto fa = csv_files(a);
    CHECK_FALSE(fa.empty());
    CHECK(fa == csv_files(b));
    CHECK(fa == csv_files(c));
    CHECK(a.summary["results"] == c.summary["results"]);
  }
}

TEST_CASE("tasep coupling run verifies the identity") {
  const auto r = run_experiment(config({{"kind", "tasep-coupling"}, {"size", "16"}, {"trials", "5"}}, "tasep"));
  CHECK(r.verified);
  CHECK(r.summary["results"]["mismatched_entries"] == 0);
  CHECK(r.summary["results"]["violations"] == 0);
}

TEST_CASE("unwritable output is a config error") {
  const auto blocker = scratch("blocker");
  fs::create_directories(blocker.parent_path());
  std::ofstream(blocker.string()) << "file";
  auto c = ExperimentConfig::from_pairs({{"kind", "oracle-check"}, {"trials", "1"}});
  c.out = (blocker / "sub").string();
  CHECK_THROWS_AS(run_experiment(c), ConfigError);
}
