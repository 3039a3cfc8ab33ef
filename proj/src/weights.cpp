#include "latticegrow/weights.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

#include "latticegrow/format.hpp"
#include "latticegrow/rng.hpp"

namespace latticegrow {

namespace {

constexpr std::uint64_t kEdgeTag = 0x65646765ULL;    // "edge"
constexpr std::uint64_t kVertexTag = 0x76657274ULL;  // "vert"

double parse_number(const std::string& text, const std::string& token) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw std::invalid_argument("distribution token '" + token + "': bad number '" + text + "'");
  }
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

DistributionSpec DistributionSpec::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw std::invalid_argument("exponential: rate must be > 0");
  }
  return {DistributionKind::Exponential, rate, 0.0};
}

DistributionSpec DistributionSpec::geometric(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("geometric: p must lie in (0,1)");
  return {DistributionKind::Geometric, p, 0.0};
}

DistributionSpec DistributionSpec::uniform(double a, double b) {
  if (!(a >= 0.0) || !(a < b) || !std::isfinite(b)) {
    throw std::invalid_argument("uniform: need 0 <= a < b");
  }
  return {DistributionKind::Uniform, a, b};
}

DistributionSpec DistributionSpec::two_point(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("two-point: p must lie in (0,1)");
  return {DistributionKind::TwoPoint, p, 0.0};
}

DistributionSpec DistributionSpec::constant(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw std::invalid_argument("constant: c must be >= 0");
  return {DistributionKind::Constant, c, 0.0};
}

DistributionSpec DistributionSpec::parse(const std::string& token) {
  auto parts = split(token, ':');
  const std::string& name = parts.front();
  auto want = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw std::invalid_argument("distribution token '" + token + "': expected " +
                                  std::to_string(n) + " parameter(s)");
    }
  };
  if (name == "exp") {
    want(1);
    return exponential(parse_number(parts[1], token));
  }
  if (name == "geom") {
    want(1);
    return geometric(parse_number(parts[1], token));
  }
  if (name == "unif") {
    want(2);
    return uniform(parse_number(parts[1], token), parse_number(parts[2], token));
  }
  if (name == "twopoint") {
    want(1);
    return two_point(parse_number(parts[1], token));
  }
  if (name == "const") {
    want(1);
    return constant(parse_number(parts[1], token));
  }
  throw std::invalid_argument("distribution token '" + token + "': unknown kind '" + name + "'");
}

std::string DistributionSpec::token() const {
  switch (kind_) {
    case DistributionKind::Exponential: return "exp:" + shortest(a_);
    case DistributionKind::Geometric: return "geom:" + shortest(a_);
    case DistributionKind::Uniform: return "unif:" + shortest(a_) + ":" + shortest(b_);
    case DistributionKind::TwoPoint: return "twopoint:" + shortest(a_);
    case DistributionKind::Constant: return "const:" + shortest(a_);
  }
  return {};
}

double DistributionSpec::mean() const {
  switch (kind_) {
    case DistributionKind::Exponential: return 1.0 / a_;
    case DistributionKind::Geometric: return 1.0 / a_;
    case DistributionKind::Uniform: return 0.5 * (a_ + b_);
    case DistributionKind::TwoPoint: return 2.0 - a_;
    case DistributionKind::Constant: return a_;
  }
  return 0.0;
}

double DistributionSpec::variance() const {
  switch (kind_) {
    case DistributionKind::Exponential: return 1.0 / (a_ * a_);
    case DistributionKind::Geometric: return (1.0 - a_) / (a_ * a_);
    case DistributionKind::Uniform: return (b_ - a_) * (b_ - a_) / 12.0;
    case DistributionKind::TwoPoint: return a_ * (1.0 - a_);
    case DistributionKind::Constant: return 0.0;
  }
  return 0.0;
}

double DistributionSpec::min_value() const {
  switch (kind_) {
    case DistributionKind::Exponential: return 0.0;
    case DistributionKind::Geometric: return 1.0;
    case DistributionKind::Uniform: return a_;
    case DistributionKind::TwoPoint: return 1.0;
    case DistributionKind::Constant: return a_;
  }
  return 0.0;
}

bool DistributionSpec::has_atoms() const {
  return kind_ == DistributionKind::Geometric || kind_ == DistributionKind::TwoPoint ||
         kind_ == DistributionKind::Constant;
}

double DistributionSpec::quantile(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw std::domain_error("quantile: u must lie in [0,1)");
  switch (kind_) {
    case DistributionKind::Exponential: return -std::log1p(-u) / a_;
    case DistributionKind::Geometric:
      // P(K = k) = p (1-p)^(k-1), k >= 1
      return 1.0 + std::floor(std::log1p(-u) / std::log1p(-a_));
    case DistributionKind::Uniform: return a_ + (b_ - a_) * u;
    case DistributionKind::TwoPoint: return u < a_ ? 1.0 : 2.0;
    case DistributionKind::Constant: return a_;
  }
  return 0.0;
}

WeightField::WeightField(DistributionSpec spec, std::uint64_t seed, Attachment attachment,
                         int dimension)
    : spec_(spec), seed_(seed), attachment_(attachment), dimension_(dimension) {
  if (dimension < 1) throw std::invalid_argument("weight field: dimension must be >= 1");
}

WeightField make_field(const DistributionSpec& spec, std::uint64_t seed, Attachment attachment,
                       int dimension) {
  return WeightField(spec, seed, attachment, dimension);
}

std::uint64_t WeightField::element_hash(std::span<const std::int64_t> coords,
                                        std::uint64_t axis_tag) const {
  const std::uint64_t tag = attachment_ == Attachment::Edge ? kEdgeTag : kVertexTag;
  std::uint64_t state = hash_words(seed_, {tag, axis_tag});
  if (permutation_.empty()) return hash_coords(state, coords);
  std::int64_t original[64];
  for (std::size_t i = 0; i < coords.size(); ++i) {
    original[permutation_[i]] = coords[i];
  }
  return hash_coords(state, std::span<const std::int64_t>(original, coords.size()));
}

double WeightField::draw(std::uint64_t bits) const { return spec_.quantile(to_unit(bits)); }

double WeightField::vertex_weight(std::span<const std::int64_t> v) const {
  return draw(element_hash(v, 0));
}

double WeightField::edge_weight(std::span<const std::int64_t> lower, int axis) const {
  const int original_axis = permutation_.empty() ? axis : permutation_[axis];
  return draw(element_hash(lower, static_cast<std::uint64_t>(original_axis) + 1));
}

double WeightField::weight_at(const Vertex& v) const {
  if (attachment_ != Attachment::Vertex) {
    throw std::invalid_argument("weight_at: vertex queried on an edge field");
  }
  if (static_cast<int>(v.size()) != dimension_) {
    throw std::invalid_argument("weight_at: vertex dimension mismatch");
  }
  return vertex_weight(v);
}

double WeightField::weight_at(const Vertex& a, const Vertex& b) const {
  if (attachment_ != Attachment::Edge) {
    throw std::invalid_argument("weight_at: edge queried on a vertex field");
  }
  if (static_cast<int>(a.size()) != dimension_ || static_cast<int>(b.size()) != dimension_) {
    throw std::invalid_argument("weight_at: edge dimension mismatch");
  }
  if (!adjacent(a, b)) throw std::invalid_argument("weight_at: endpoints are not adjacent");
  int axis = 0;
  while (a[axis] == b[axis]) ++axis;
  const Vertex& lower = a[axis] < b[axis] ? a : b;
  return edge_weight(lower, axis);
}

WeightField WeightField::permuted(std::vector<int> permutation) const {
  if (static_cast<int>(permutation.size()) != dimension_) {
    throw std::invalid_argument("permuted: permutation size must equal dimension");
  }
  if (dimension_ > 64) throw std::invalid_argument("permuted: dimension above 64");
  std::vector<bool> seen(permutation.size(), false);
  for (int p : permutation) {
    if (p < 0 || p >= dimension_ || seen[p]) {
      throw std::invalid_argument("permuted: not a permutation");
    }
    seen[p] = true;
  }
  WeightField out = *this;
  if (!permutation_.empty()) {
    // compose: view coordinate i -> this view's coordinate p[i] -> original
    for (auto& p : permutation) p = permutation_[p];
  }
  bool identity = true;
  for (std::size_t i = 0; i < permutation.size(); ++i) identity = identity && permutation[i] == static_cast<int>(i);
  if (identity) permutation.clear();
  out.permutation_ = std::move(permutation);
  return out;
}

bool WeightField::same_environment(const WeightField& other) const {
  return spec_ == other.spec_ && seed_ == other.seed_ && attachment_ == other.attachment_ &&
         dimension_ == other.dimension_ && permutation_ == other.permutation_;
}

}  // namespace latticegrow
