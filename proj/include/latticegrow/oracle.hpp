#pragma once

#include <cstdint>
#include <stdexcept>

#include "latticegrow/fpp.hpp"
#include "latticegrow/lpp.hpp"

namespace latticegrow {

/// Thrown when exhaustive enumeration would exceed its budget. The oracle
/// never truncates silently.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EnumerationBudget {
  std::size_t max_box_vertices = 729;     // 27 x 27 in d = 2
  std::uint64_t max_paths = 50'000'000;   // DFS node expansions / oriented paths
};

/// Exact FPP passage time by depth-first enumeration of self-avoiding paths
/// inside the box. Needs strictly positive weights so that partial sums can
/// be pruned against the best complete path found so far.
double brute_force_fpp(const WeightField& field, const LatticeBox& box, const Vertex& source,
                       const Vertex& target, const EnumerationBudget& budget = {});

/// Result of full enumeration of oriented paths 0 -> target.
struct LppEnumeration {
  double time = 0.0;
  std::uint64_t paths = 0;
};

/// Exact LPP passage time by listing every oriented path 0 -> target.
LppEnumeration brute_force_lpp(const WeightField& field, const Vertex& target,
                               const EnumerationBudget& budget = {});

/// binomial(x1 + x2, x1).
std::uint64_t oriented_path_count(const Vertex& target);

}  // namespace latticegrow
