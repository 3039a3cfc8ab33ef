#include "latticegrow/fpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string>

#include "latticegrow/format.hpp"

namespace latticegrow {

namespace {

constexpr std::uint32_t kNoPred = std::numeric_limits<std::uint32_t>::max();
constexpr double kInf = std::numeric_limits<double>::infinity();

struct HeapEntry {
  double key;
  std::uint32_t index;
};

// Min-heap on (key, index): equal times settle in lexicographic order.
struct HeapAfter {
  bool operator()(const HeapEntry& a, const HeapEntry& b) const {
    return a.key > b.key || (a.key == b.key && a.index > b.index);
  }
};

}  // namespace

LatticeBox::LatticeBox(int dimension, std::int64_t radius)
    : dimension_(dimension), radius_(radius), side_(2 * radius + 1), size_(1) {
  if (dimension < 1) throw std::invalid_argument("box: dimension must be >= 1");
  if (radius < 1) throw std::invalid_argument("box: radius must be >= 1");
  strides_.assign(static_cast<std::size_t>(dimension), 1);
  for (int i = dimension - 1; i >= 0; --i) {
    strides_[static_cast<std::size_t>(i)] = size_;
    if (size_ > (std::size_t{1} << 31) / static_cast<std::size_t>(side_)) {
      throw std::invalid_argument("box: too many vertices");
    }
    size_ *= static_cast<std::size_t>(side_);
  }
}

bool LatticeBox::contains(std::span<const std::int64_t> v) const {
  if (static_cast<int>(v.size()) != dimension_) return false;
  return std::all_of(v.begin(), v.end(), [&](auto c) { return c >= -radius_ && c <= radius_; });
}

std::size_t LatticeBox::index(std::span<const std::int64_t> v) const {
  std::size_t idx = 0;
  for (int i = 0; i < dimension_; ++i) {
    idx += static_cast<std::size_t>(v[static_cast<std::size_t>(i)] + radius_) *
           strides_[static_cast<std::size_t>(i)];
  }
  return idx;
}

void LatticeBox::decode(std::size_t index, std::span<std::int64_t> out) const {
  for (int i = 0; i < dimension_; ++i) {
    const auto s = strides_[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(index / s) - radius_;
    index %= s;
  }
}

Vertex LatticeBox::vertex(std::size_t index) const {
  Vertex v(static_cast<std::size_t>(dimension_));
  decode(index, v);
  return v;
}

bool LatticeBox::on_face(std::span<const std::int64_t> v) const {
  return std::any_of(v.begin(), v.end(), [&](auto c) { return c == -radius_ || c == radius_; });
}

PassageTimeMap::PassageTimeMap(Vertex source, LatticeBox box, WeightField field)
    : source_(std::move(source)), box_(std::move(box)), field_(std::move(field)) {}

bool PassageTimeMap::settled(const Vertex& v) const {
  return box_.contains(v) && settled_[box_.index(v)] != 0;
}

double PassageTimeMap::time(const Vertex& v) const {
  if (!settled(v)) throw std::out_of_range("passage time map: " + to_string(v) + " not settled");
  return dist_[box_.index(v)];
}

std::vector<Vertex> PassageTimeMap::settle_order() const {
  std::vector<Vertex> out;
  out.reserve(order_.size());
  for (auto idx : order_) out.push_back(box_.vertex(idx));
  return out;
}

Vertex PassageTimeMap::predecessor(const Vertex& v) const {
  if (!settled(v)) throw std::out_of_range("passage time map: " + to_string(v) + " not settled");
  const auto p = pred_[box_.index(v)];
  if (p == kNoPred) throw std::out_of_range("passage time map: source has no predecessor");
  return box_.vertex(p);
}

PassageTimeMap fpp_dijkstra(const WeightField& field, const Vertex& source, const StopRule& stop,
                            const LatticeBox& box) {
  if (field.attachment() != Attachment::Edge) {
    throw std::invalid_argument("fpp_dijkstra: field must carry edge weights");
  }
  if (field.dimension() != box.dimension()) {
    throw std::invalid_argument("fpp_dijkstra: field and box dimensions differ");
  }
  if (!box.contains(source)) throw std::invalid_argument("fpp_dijkstra: source outside box");

  double tau = kInf;
  std::size_t max_settled = std::numeric_limits<std::size_t>::max();
  std::size_t target_index = std::numeric_limits<std::size_t>::max();
  if (const auto* b = std::get_if<TimeBudget>(&stop)) {
    if (!(b->tau >= 0.0)) throw std::invalid_argument("fpp_dijkstra: time budget must be >= 0");
    tau = b->tau;
  } else if (const auto* t = std::get_if<TargetVertex>(&stop)) {
    if (!box.contains(t->target)) throw std::invalid_argument("fpp_dijkstra: target outside box");
    target_index = box.index(t->target);
  } else {
    max_settled = std::get<SettledCount>(stop).count;
    if (max_settled == 0) throw std::invalid_argument("fpp_dijkstra: settle count must be >= 1");
  }

  const int d = box.dimension();
  const std::int64_t radius = box.radius();
  PassageTimeMap map(source, box, field);
  map.dist_.assign(box.size(), kInf);
  map.pred_.assign(box.size(), kNoPred);
  map.settled_.assign(box.size(), 0);

  std::priority_queue<HeapEntry, std::vector<HeapEntry>, HeapAfter> heap;
  const auto src = static_cast<std::uint32_t>(box.index(source));
  map.dist_[src] = 0.0;
  heap.push({0.0, src});

  Vertex x(static_cast<std::size_t>(d));
  Vertex lower(static_cast<std::size_t>(d));
  double last_key = 0.0;
  bool target_done = false;
  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    if (map.settled_[top.index] || top.key != map.dist_[top.index]) {
      heap.pop();
      continue;
    }
    if (top.key > tau) break;
    if (target_done && top.key > map.horizon_) break;
    if (map.order_.size() == max_settled) break;
    heap.pop();

    const std::uint32_t u = top.index;
    map.settled_[u] = 1;
    map.order_.push_back(u);
    last_key = top.key;
    box.decode(u, x);
    if (box.on_face(x)) map.boundary_hit_ = true;
    if (u == target_index) {
      target_done = true;
      map.horizon_ = top.key;
    }

    for (int axis = 0; axis < d; ++axis) {
      const auto ax = static_cast<std::size_t>(axis);
      const std::size_t stride = box.stride(axis);
      for (int sign : {-1, +1}) {
        if ((sign < 0 && x[ax] == -radius) || (sign > 0 && x[ax] == radius)) continue;
        const auto v = static_cast<std::uint32_t>(sign < 0 ? u - stride : u + stride);
        if (map.settled_[v]) continue;
        lower = x;
        if (sign < 0) lower[ax] -= 1;
        const double w = field.edge_weight(lower, axis);
        const double cand = top.key + w;
        if (cand < map.dist_[v]) {
          map.dist_[v] = cand;
          map.pred_[v] = u;
          heap.push({cand, v});
        } else if (cand == map.dist_[v] && u < map.pred_[v]) {
          map.pred_[v] = u;
        }
      }
    }
  }

  map.frontier_exhausted_ = map.order_.size() == box.size();
  if (std::holds_alternative<TimeBudget>(stop)) {
    map.horizon_ = map.frontier_exhausted_ ? kInf : tau;
  } else if (std::holds_alternative<TargetVertex>(stop)) {
    if (!target_done) throw std::logic_error("fpp_dijkstra: target unreachable inside box");
  } else {
    // Unsettled ties at the last key would break the horizon contract.
    bool tie_pending = false;
    while (!heap.empty()) {
      const HeapEntry top = heap.top();
      if (map.settled_[top.index] || top.key != map.dist_[top.index]) {
        heap.pop();
        continue;
      }
      tie_pending = top.key <= last_key;
      break;
    }
    map.horizon_ = map.frontier_exhausted_ ? kInf
                   : tie_pending          ? std::nextafter(last_key, -kInf)
                                          : last_key;
  }
  return map;
}

std::vector<Vertex> fpp_ball(const PassageTimeMap& map, double t) {
  if (t > map.horizon()) {
    throw std::domain_error("fpp_ball: t exceeds the settled horizon " + shortest(map.horizon()));
  }
  std::vector<Vertex> ball;
  map.for_each_settled([&](std::size_t idx, double time) {
    if (time <= t) ball.push_back(map.box().vertex(idx));
  });
  return ball;
}

Geodesic fpp_geodesic(const WeightField& field, const PassageTimeMap& map, const Vertex& target) {
  if (!field.same_environment(map.field())) {
    throw std::invalid_argument("fpp_geodesic: field differs from the one that built the map");
  }
  if (!map.settled(target)) {
    throw std::out_of_range("fpp_geodesic: target " + to_string(target) + " not settled");
  }
  Geodesic geo;
  Vertex v = target;
  while (v != map.source()) {
    geo.vertices.push_back(v);
    v = map.predecessor(v);
  }
  geo.vertices.push_back(v);
  std::reverse(geo.vertices.begin(), geo.vertices.end());
  double total = 0.0;
  for (std::size_t i = 1; i < geo.vertices.size(); ++i) {
    total += field.weight_at(geo.vertices[i - 1], geo.vertices[i]);
  }
  geo.time = total;
  return geo;
}

double wandering_deviation(std::span<const Vertex> path, const Vertex& x, const Vertex& y) {
  if (path.empty()) throw std::invalid_argument("wandering_deviation: empty path");
  if (path.front() != x || path.back() != y) {
    throw std::invalid_argument("wandering_deviation: path does not run from x to y");
  }
  const std::size_t d = x.size();
  double seg2 = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double s = static_cast<double>(y[i] - x[i]);
    seg2 += s * s;
  }
  double worst = 0.0;
  for (const auto& p : path) {
    double dot = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      dot += static_cast<double>(p[i] - x[i]) * static_cast<double>(y[i] - x[i]);
    }
    const double s = seg2 > 0.0 ? std::clamp(dot / seg2, 0.0, 1.0) : 0.0;
    double dist2 = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double c = static_cast<double>(x[i]) + s * static_cast<double>(y[i] - x[i]);
      const double diff = static_cast<double>(p[i]) - c;
      dist2 += diff * diff;
    }
    worst = std::max(worst, std::sqrt(dist2));
  }
  return worst;
}

double wandering_deviation(const Geodesic& geo, const Vertex& x, const Vertex& y) {
  return wandering_deviation(geo.vertices, x, y);
}

GreedyPath greedy_forward_path(const WeightField& field, std::int64_t steps) {
  if (field.attachment() != Attachment::Edge) {
    throw std::invalid_argument("greedy_forward_path: field must carry edge weights");
  }
  const int d = field.dimension();
  if (d < 2) throw std::invalid_argument("greedy_forward_path: dimension must be >= 2");
  if (steps < 1) throw std::invalid_argument("greedy_forward_path: steps must be >= 1");
  GreedyPath out;
  Vertex x = origin(d);
  out.vertices.reserve(static_cast<std::size_t>(steps) + 1);
  out.step_weights.reserve(static_cast<std::size_t>(steps));
  out.vertices.push_back(x);
  for (std::int64_t s = 0; s < steps; ++s) {
    int best_axis = 0;
    double best = field.edge_weight(x, 0);
    for (int axis = 1; axis < d; ++axis) {
      const double w = field.edge_weight(x, axis);
      if (w < best) {
        best = w;
        best_axis = axis;
      }
    }
    x[static_cast<std::size_t>(best_axis)] += 1;
    out.vertices.push_back(x);
    out.step_weights.push_back(best);
    out.total += best;
  }
  return out;
}

void write_csv(std::ostream& out, const PassageTimeMap& map) {
  const int d = map.box().dimension();
  std::vector<std::string> header;
  for (int i = 1; i <= d; ++i) header.push_back("x" + std::to_string(i));
  header.push_back("T");
  CsvWriter csv(out, header);
  map.for_each_settled([&](std::size_t idx, double t) {
    for (auto c : map.box().vertex(idx)) csv.cell(static_cast<long long>(c));
    csv.cell(t);
    csv.end_row();
  });
}

void write_ball_csv(std::ostream& out, std::span<const Vertex> ball, int dimension) {
  std::vector<std::string> header;
  for (int i = 1; i <= dimension; ++i) header.push_back("x" + std::to_string(i));
  CsvWriter csv(out, header);
  for (const auto& v : ball) {
    for (auto c : v) csv.cell(static_cast<long long>(c));
    csv.end_row();
  }
}

}  // namespace latticegrow
