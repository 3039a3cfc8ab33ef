#include "latticegrow/tasep.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "latticegrow/format.hpp"
#include "latticegrow/rng.hpp"

namespace latticegrow {

namespace {

constexpr std::uint64_t kClockTag = 0x7461736570ULL;  // "tasep"

void check_size(std::int64_t particles, std::int64_t steps) {
  if (particles < 1 || steps < 1) {
    throw std::invalid_argument("tasep: particles and steps must be >= 1");
  }
}

}  // namespace

double StepTimeTable::at(std::int64_t k, std::int64_t n) const {
  if (k < 1 || k > particles_ || n < 1 || n > steps_) {
    throw std::out_of_range("step table: (k, n) out of range");
  }
  return s_[static_cast<std::size_t>((k - 1) * steps_ + (n - 1))];
}

std::int64_t StepTimeTable::position(std::int64_t k, double t) const {
  std::int64_t made = 0;
  while (made < steps_ && at(k, made + 1) <= t) ++made;
  if (made == steps_) throw CurrentUndetermined("position: particle ran past the table");
  return 1 - k + made;
}

StepTimeTable tasep_from_clocks(std::span<const double> clocks, std::int64_t particles,
                                std::int64_t steps) {
  check_size(particles, steps);
  if (clocks.size() != static_cast<std::size_t>(particles * steps)) {
    throw std::invalid_argument("tasep_from_clocks: clock table must be K x N");
  }
  StepTimeTable table;
  table.particles_ = particles;
  table.steps_ = steps;
  table.s_.assign(clocks.size(), 0.0);
  auto& s = table.s_;
  const auto row = static_cast<std::size_t>(steps);
  for (std::size_t k = 0; k < static_cast<std::size_t>(particles); ++k) {
    for (std::size_t n = 0; n < row; ++n) {
      const std::size_t i = k * row + n;
      double wait;
      if (k == 0 && n == 0) {
        wait = 0.0;
      } else if (k == 0) {
        wait = s[i - 1];
      } else if (n == 0) {
        wait = s[i - row];
      } else {
        // particle ahead makes this step, or this particle makes its previous one
        wait = std::max(s[i - row], s[i - 1]);
      }
      s[i] = wait + clocks[i];
    }
  }
  return table;
}

StepTimeTable tasep_run(const ClockSource& source, std::int64_t particles, std::int64_t steps) {
  check_size(particles, steps);
  std::optional<WeightField> coupled;
  WeightField clock_field = make_field(DistributionSpec::exponential(1.0), 0, Attachment::Vertex, 2);
  if (const auto* c = std::get_if<LppCoupled>(&source)) {
    const auto& f = c->field;
    if (f.spec() != DistributionSpec::exponential(1.0) || f.attachment() != Attachment::Vertex ||
        f.dimension() != 2) {
      throw std::invalid_argument("tasep_run: coupled field must be Exp(1) vertex weights on Z^2");
    }
    clock_field = f;
    coupled = f;
  } else {
    const auto seed = std::get<IndependentClocks>(source).seed;
    clock_field = make_field(DistributionSpec::exponential(1.0), hash_words(seed, {kClockTag}),
                             Attachment::Vertex, 2);
  }

  std::vector<double> clocks(static_cast<std::size_t>(particles * steps));
  std::int64_t site[2];
  for (std::int64_t k = 1; k <= particles; ++k) {
    for (std::int64_t n = 1; n <= steps; ++n) {
      site[0] = n - 1;
      site[1] = k - 1;
      const bool first_jump = k == 1 && n == 1;  // happens at time zero
      clocks[static_cast<std::size_t>((k - 1) * steps + (n - 1))] =
          first_jump ? 0.0 : clock_field.vertex_weight(std::span<const std::int64_t>(site, 2));
    }
  }
  auto table = tasep_from_clocks(clocks, particles, steps);
  table.field_ = std::move(coupled);
  return table;
}

std::int64_t current_at(const StepTimeTable& table, double t) {
  if (!(t >= 0.0)) throw std::domain_error("current_at: t must be >= 0");
  const std::int64_t m = std::min(table.particles(), table.steps());
  // s(k, k) is nondecreasing in k, so s(m, m) > t settles every k >= m.
  if (table.at(m, m) <= t) {
    throw CurrentUndetermined("current_at: table too small to determine c_t at t = " +
                              shortest(t));
  }
  std::int64_t c = 0;
  for (std::int64_t k = 2; k < m; ++k) {
    if (table.at(k, k) <= t) ++c;
  }
  return c;
}

bool coupling_equivalence(const StepTimeTable& table, const LppTimeMap& map, std::int64_t n,
                          double t) {
  if (!table.coupled_field() || !table.coupled_field()->same_environment(map.field())) {
    throw std::invalid_argument("coupling_equivalence: table and map use different fields");
  }
  if (n < 1 || !map.contains(Vertex{n, n})) {
    throw std::out_of_range("coupling_equivalence: n outside the LPP rectangle");
  }
  const bool lpp_side = map.time(n, n) <= t;
  const bool tasep_side = current_at(table, t) >= n;
  return lpp_side == tasep_side;
}

void write_csv(std::ostream& out, const StepTimeTable& table) {
  CsvWriter csv(out, {"k", "n", "s"});
  for (std::int64_t k = 1; k <= table.particles(); ++k) {
    for (std::int64_t n = 1; n <= table.steps(); ++n) {
      csv.cell(static_cast<long long>(k)).cell(static_cast<long long>(n)).cell(table.at(k, n));
      csv.end_row();
    }
  }
}

void write_current_csv(std::ostream& out, const StepTimeTable& table, std::span<const double> ts) {
  CsvWriter csv(out, {"t", "c"});
  for (double t : ts) {
    csv.cell(t).cell(static_cast<long long>(current_at(table, t)));
    csv.end_row();
  }
}

}  // namespace latticegrow
