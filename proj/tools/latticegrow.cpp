// latticegrow: experiment runner.
//
// Also `lpp-exact --model exp|geom [--p P] --x X1,X2` evaluates the closed-form
// LPP shape function.
//
// Exit codes: 0 success, 1 a consistency check failed (oracle-check,
// tasep-coupling), 2 invalid configuration, 3 budget or cap exceeded,
// 4 unexpected internal error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <span>
#include <sstream>
#include <string>

#include "latticegrow/experiment.hpp"
#include "latticegrow/format.hpp"
#include "latticegrow/lpp.hpp"

namespace {

using latticegrow::ConfigError;
using latticegrow::ExperimentConfig;

struct Flag {
  const char* key;
  const char* help;
};

constexpr Flag kCommonFlags[] = {
    {"dist", "weight law token, e.g. exp:1, geom:0.5, unif:0.5:1.5, twopoint:0.8, const:1"},
    {"dim", "lattice dimension"},
    {"seed", "master seed"},
    {"trials", "independent trials per grid point (seeds for checks)"},
    {"n-grid", "grid of n, e.g. 64,128,256 or 64..1024 (doubling)"},
    {"t", "time for shape estimates"},
    {"out", "output directory"},
    {"workers", "worker threads"},
};

constexpr Flag kExtraFlags[] = {
    {"model", "fpp or lpp"},
    {"direction", "direction x as comma-separated coordinates (default all ones)"},
    {"angles", "number of directions in the angular grid"},
    {"size", "tasep-coupling: K = N; oracle-check: FPP box radius (LPP corner is twice it)"},
};

constexpr const char* kKinds[][2] = {
    {"fpp-shape", "radial reach of B(t)/t for first-passage percolation"},
    {"lpp-shape", "radial reach of B(t)/t for last-passage percolation"},
    {"radial-g", "means of T(0, nx)/n with the Fekete envelope"},
    {"exponents", "variance, wandering and shape-gap series with exponent fits"},
    {"flat-edge", "diagonal ratio T(0,(n,n))/(2n) under two-point weights"},
    {"eden", "Eden clusters and their roundness"},
    {"idla", "internal DLA clusters and their roundness"},
    {"tasep-coupling", "TASEP step times against LPP, with current probes"},
    {"oracle-check", "solvers against brute-force enumeration"},
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Percolation and growth-model experiments"};
  app.require_subcommand(1);

  struct Command {
    CLI::App* app;
    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
  };
  std::map<std::string, Command> commands;
  for (const auto& [name, help] : kKinds) {
    auto& cmd = commands[name];
    cmd.app = app.add_subcommand(name, help);
    cmd.app->add_option("--config", cmd.config_path, "key = value file; flags override it");
    for (std::span<const Flag> flags : {std::span<const Flag>(kCommonFlags), std::span<const Flag>(kExtraFlags)}) {
      for (const auto& f : flags) {
        cmd.options[f.key] = cmd.app->add_option(std::string("--") + f.key, cmd.values[f.key], f.help);
      }
    }
  }

  std::string exact_model = "exp";
  double exact_p = 0.5;
  std::string exact_x;
  auto* exact = app.add_subcommand("lpp-exact", "closed-form LPP shape function g(x1, x2)");
  exact->add_option("--model", exact_model, "exp (rate 1) or geom")->check(CLI::IsMember({"exp", "geom"}));
  exact->add_option("--p", exact_p, "geometric parameter");
  exact->add_option("--x", exact_x, "point x1,x2")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (exact->parsed()) {
      const auto x = ExperimentConfig::from_pairs({{"direction", exact_x}}).direction;
      if (x.size() != 2) throw ConfigError("x", "needs two coordinates");
      const auto shape = exact_model == "exp" ? latticegrow::ExactShape::exponential()
                                              : latticegrow::ExactShape::geometric(exact_p);
      std::cout << latticegrow::shortest(latticegrow::exact_g(shape, x[0], x[1])) << '\n';
      return 0;
    }
    for (auto& [name, cmd] : commands) {
      if (!cmd.app->parsed()) continue;
      ExperimentConfig::Pairs pairs;
      if (!cmd.config_path.empty()) pairs = ExperimentConfig::parse_pairs(read_file(cmd.config_path));
      if (pairs.count("kind") && pairs["kind"] != name) {
        throw ConfigError("kind", "config file says '" + pairs["kind"] + "' but the subcommand is " + name);
      }
      pairs["kind"] = name;
      for (const auto& [key, opt] : cmd.options) {
        if (opt->count() > 0) pairs[key] = cmd.values[key];
      }
      const auto config = ExperimentConfig::from_pairs(pairs);
      const auto result = latticegrow::run_experiment(config);
      for (const auto& w : result.summary["warnings"]) std::cerr << "warning: " << w.get<std::string>() << '\n';
      for (const auto& f : result.files) std::cout << f << '\n';
      if (!result.verified) {
        std::cerr << "error: consistency check failed; see summary.json\n";
        return 1;
      }
    }
    return 0;
  } catch (const latticegrow::HardFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 4;
  }
}
