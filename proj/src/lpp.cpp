#include "latticegrow/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "latticegrow/format.hpp"

namespace latticegrow {

LppTimeMap::LppTimeMap(Vertex corner, WeightField field)
    : corner_(std::move(corner)), field_(std::move(field)) {
  const std::size_t d = corner_.size();
  strides_.assign(d, 1);
  std::size_t size = 1;
  for (std::size_t i = d; i-- > 0;) {
    strides_[i] = size;
    size *= static_cast<std::size_t>(corner_[i] + 1);
  }
  table_.assign(size, 0.0);
}

bool LppTimeMap::contains(std::span<const std::int64_t> x) const {
  if (x.size() != corner_.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < 0 || x[i] > corner_[i]) return false;
  }
  return true;
}

std::size_t LppTimeMap::index(std::span<const std::int64_t> x) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) idx += static_cast<std::size_t>(x[i]) * strides_[i];
  return idx;
}

Vertex LppTimeMap::vertex(std::size_t index) const {
  Vertex v(corner_.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = static_cast<std::int64_t>(index / strides_[i]);
    index %= strides_[i];
  }
  return v;
}

double LppTimeMap::time(std::span<const std::int64_t> x) const {
  if (!contains(x)) throw std::out_of_range("lpp map: point outside the rectangle");
  return table_[index(x)];
}

double LppTimeMap::time(std::int64_t x1, std::int64_t x2) const {
  const std::int64_t x[2] = {x1, x2};
  return time(std::span<const std::int64_t>(x, 2));
}

LppTimeMap lpp_dp(const WeightField& field, const Vertex& corner) {
  if (field.attachment() != Attachment::Vertex) {
    throw std::invalid_argument("lpp_dp: field must carry vertex weights");
  }
  if (static_cast<int>(corner.size()) != field.dimension()) {
    throw std::invalid_argument("lpp_dp: corner dimension differs from the field");
  }
  for (auto c : corner) {
    if (c < 0) throw std::invalid_argument("lpp_dp: corner has a negative coordinate");
  }
  LppTimeMap map(corner, field);
  auto& table = map.table_;
  const std::size_t d = corner.size();

  if (d == 2) {
    const std::int64_t n1 = corner[0];
    const std::int64_t n2 = corner[1];
    const auto row = static_cast<std::size_t>(n2 + 1);
    std::int64_t x[2];
    for (std::int64_t i = 0; i <= n1; ++i) {
      x[0] = i;
      double* cur = table.data() + static_cast<std::size_t>(i) * row;
      const double* up = i > 0 ? cur - row : nullptr;
      for (std::int64_t j = 0; j <= n2; ++j) {
        if (i == 0 && j == 0) {
          cur[0] = 0.0;
          continue;
        }
        x[1] = j;
        const double w = field.vertex_weight(std::span<const std::int64_t>(x, 2));
        double best;
        if (i == 0) {
          best = cur[j - 1];
        } else if (j == 0) {
          best = up[0];
        } else {
          best = std::max(up[j], cur[j - 1]);
        }
        cur[j] = best + w;
      }
    }
    return map;
  }

  Vertex x(d, 0);
  for (std::size_t idx = 0; idx < table.size(); ++idx) {
    if (idx > 0) {
      for (std::size_t i = d; i-- > 0;) {
        if (++x[i] <= corner[i]) break;
        x[i] = 0;
      }
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < d; ++i) {
        if (x[i] > 0) best = std::max(best, table[idx - map.strides_[i]]);
      }
      table[idx] = best + field.vertex_weight(x);
    }
  }
  return map;
}

OrientedPath lpp_geodesic(const LppTimeMap& map, const WeightField& field, const Vertex& target) {
  if (!field.same_environment(map.field())) {
    throw std::invalid_argument("lpp_geodesic: field differs from the one that built the map");
  }
  if (!map.contains(target)) throw std::out_of_range("lpp_geodesic: target outside rectangle");
  OrientedPath path;
  Vertex x = target;
  const std::size_t d = x.size();
  while (true) {
    path.vertices.push_back(x);
    std::size_t best_axis = d;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < d; ++i) {
      if (x[i] == 0) continue;
      x[i] -= 1;
      const double t = map.time(x);
      x[i] += 1;
      if (t > best) {
        best = t;
        best_axis = i;
      }
    }
    if (best_axis == d) break;
    x[best_axis] -= 1;
  }
  std::reverse(path.vertices.begin(), path.vertices.end());
  double total = 0.0;
  for (std::size_t i = 1; i < path.vertices.size(); ++i) {
    total += field.vertex_weight(path.vertices[i]);
  }
  path.time = total;
  return path;
}

ExactShape ExactShape::geometric(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("geometric shape: p must lie in (0,1)");
  return {ShapeModel::Geometric, p};
}

bool ExactShape::available_for(const DistributionSpec& spec) {
  return (spec.kind() == DistributionKind::Exponential && spec.param1() == 1.0) ||
         spec.kind() == DistributionKind::Geometric;
}

ExactShape ExactShape::for_spec(const DistributionSpec& spec) {
  if (!available_for(spec)) {
    throw std::invalid_argument("no exact shape for weights " + spec.token());
  }
  return spec.kind() == DistributionKind::Geometric ? geometric(spec.param1()) : exponential();
}

double exact_g(const ExactShape& shape, double x1, double x2) {
  if (!(x1 >= 0.0) || !(x2 >= 0.0)) throw std::domain_error("exact_g: negative coordinate");
  if (shape.model == ShapeModel::ExponentialRate1) {
    const double s = std::sqrt(x1) + std::sqrt(x2);
    return s * s;
  }
  const double p = shape.p;
  return (x1 + x2 + 2.0 * std::sqrt(x1 * x2 * (1.0 - p))) / p;
}

double martin_asymptote(double mu, double sigma, double a) {
  if (!(a > 0.0)) throw std::domain_error("martin_asymptote: a must be > 0");
  if (!(sigma >= 0.0)) throw std::domain_error("martin_asymptote: sigma must be >= 0");
  return mu + 2.0 * sigma * std::sqrt(a);
}

void write_csv(std::ostream& out, const LppTimeMap& map) {
  if (map.dimension() != 2) throw std::invalid_argument("lpp csv: two-dimensional maps only");
  CsvWriter csv(out, {"x1", "x2", "T"});
  for (std::size_t idx = 0; idx < map.size(); ++idx) {
    const Vertex v = map.vertex(idx);
    csv.cell(static_cast<long long>(v[0])).cell(static_cast<long long>(v[1])).cell(map.table()[idx]);
    csv.end_row();
  }
}

}  // namespace latticegrow
