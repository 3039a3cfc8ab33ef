#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace latticegrow {

/// A point of Z^d. Coordinates are stored in axis order.
using Vertex = std::vector<std::int64_t>;

inline Vertex origin(int d) { return Vertex(static_cast<std::size_t>(d), 0); }

inline Vertex unit(int d, int axis, std::int64_t sign = 1) {
  Vertex v = origin(d);
  v[static_cast<std::size_t>(axis)] = sign;
  return v;
}

inline std::int64_t l1_norm(std::span<const std::int64_t> x) {
  std::int64_t s = 0;
  for (auto c : x) s += c < 0 ? -c : c;
  return s;
}

inline std::int64_t linf_norm(std::span<const std::int64_t> x) {
  std::int64_t s = 0;
  for (auto c : x) s = std::max(s, c < 0 ? -c : c);
  return s;
}

inline double euclidean_norm(std::span<const std::int64_t> x) {
  double s = 0.0;
  for (auto c : x) s += static_cast<double>(c) * static_cast<double>(c);
  return std::sqrt(s);
}

inline bool adjacent(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) return false;
  std::int64_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  return diff == 1;
}

/// Componentwise floor of a real point: the lattice point z with x in z + [0,1)^d.
inline Vertex lattice_floor(std::span<const double> x) {
  Vertex v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = static_cast<std::int64_t>(std::floor(x[i]));
  return v;
}

std::string to_string(const Vertex& v);

/// Parses "1,2,-3" into a vertex.
Vertex parse_vertex(const std::string& text);

}  // namespace latticegrow
