#include "pgbrrt/environment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pgbrrt/errors.hpp"

namespace pgbrrt {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string describe(const ConfigPoint& z) {
  std::string out = "(";
  for (std::size_t i = 0; i < z.dimension(); ++i) {
    if (i) out += ", ";
    out += std::to_string(z[i]);
  }
  return out + ")";
}

bool point_in_aabb(const ConfigPoint& lo, const ConfigPoint& hi, const ConfigPoint& z, std::size_t d) {
  for (std::size_t i = 0; i < d; ++i) {
    if (z[i] < lo[i] || z[i] > hi[i]) return false;
  }
  return true;
}

double aabb_distance(const ConfigPoint& lo, const ConfigPoint& hi, const ConfigPoint& z, std::size_t d) {
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double e = std::max({lo[i] - z[i], 0.0, z[i] - hi[i]});
    s += e * e;
  }
  return std::sqrt(s);
}

bool segment_meets_aabb(const ConfigPoint& lo, const ConfigPoint& hi, const ConfigPoint& a, const ConfigPoint& b,
                        std::size_t d) {
  double t0 = 0.0, t1 = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    const double delta = b[i] - a[i];
    if (delta == 0.0) {
      if (a[i] < lo[i] || a[i] > hi[i]) return false;
      continue;
    }
    double ta = (lo[i] - a[i]) / delta;
    double tb = (hi[i] - a[i]) / delta;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }
  return true;
}

bool contains(const Obstacle& o, const ConfigPoint& z) {
  if (const auto* box = std::get_if<Box>(&o)) {
    for (std::size_t i = 0; i < z.dimension(); ++i) {
      if (z[i] < box->min[i] || z[i] > box->max[i]) return false;
    }
    return true;
  }
  const auto& sp = std::get<Sphere>(o);
  return squared_distance(z, sp.center) <= sp.radius * sp.radius;
}

double distance_to(const Obstacle& o, const ConfigPoint& z) {
  if (const auto* box = std::get_if<Box>(&o)) return distance_to_box(*box, z);
  return distance_to_sphere(std::get<Sphere>(o), z);
}

bool segment_hits(const Obstacle& o, const ConfigPoint& a, const ConfigPoint& b) {
  if (const auto* box = std::get_if<Box>(&o)) return segment_hits_box(*box, a, b);
  return segment_hits_sphere(std::get<Sphere>(o), a, b);
}

std::size_t obstacle_dimension(const Obstacle& o) {
  return std::visit(
      [](const auto& shape) -> std::size_t {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Box>) {
          return shape.min.dimension() == shape.max.dimension() ? shape.min.dimension() : 0;
        } else {
          return shape.center.dimension();
        }
      },
      o);
}

}  // namespace

bool Bounds::contains(const ConfigPoint& z) const {
  for (std::size_t i = 0; i < z.dimension(); ++i) {
    if (z[i] < min[i] || z[i] > max[i]) return false;
  }
  return true;
}

double Bounds::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < min.dimension(); ++i) v *= max[i] - min[i];
  return v;
}

double Bounds::diagonal() const { return distance(min, max); }

double distance_to_box(const Box& box, const ConfigPoint& z) {
  double s = 0.0;
  for (std::size_t i = 0; i < z.dimension(); ++i) {
    const double d = std::max({box.min[i] - z[i], 0.0, z[i] - box.max[i]});
    s += d * d;
  }
  return std::sqrt(s);
}

double distance_to_sphere(const Sphere& sphere, const ConfigPoint& z) {
  return std::max(distance(z, sphere.center) - sphere.radius, 0.0);
}

// Slab test over the closed box, parameter range [0, 1].
bool segment_hits_box(const Box& box, const ConfigPoint& a, const ConfigPoint& b) {
  double t_enter = 0.0;
  double t_exit = 1.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double d = b[i] - a[i];
    if (d == 0.0) {
      if (a[i] < box.min[i] || a[i] > box.max[i]) return false;
      continue;
    }
    double t1 = (box.min[i] - a[i]) / d;
    double t2 = (box.max[i] - a[i]) / d;
    if (t1 > t2) std::swap(t1, t2);
    t_enter = std::max(t_enter, t1);
    t_exit = std::min(t_exit, t2);
    if (t_enter > t_exit) return false;
  }
  return true;
}

bool segment_hits_sphere(const Sphere& sphere, const ConfigPoint& a, const ConfigPoint& b) {
  const ConfigPoint ab = b - a;
  const double len2 = squared_norm(ab);
  double t = 0.0;
  if (len2 > 0.0) {
    double dot = 0.0;
    for (std::size_t i = 0; i < a.dimension(); ++i) dot += (sphere.center[i] - a[i]) * ab[i];
    t = std::clamp(dot / len2, 0.0, 1.0);
  }
  const ConfigPoint closest = a + ab * t;
  return squared_distance(closest, sphere.center) <= sphere.radius * sphere.radius;
}

Environment::Environment(Bounds bounds, std::vector<Obstacle> obstacles, ConfigPoint start, ConfigPoint goal,
                         double goal_radius)
    : bounds_(std::move(bounds)),
      obstacles_(std::move(obstacles)),
      start_(start),
      goal_(goal),
      goal_radius_(goal_radius) {
  const std::size_t d = bounds_.min.dimension();
  if (d < 2) throw ValidationError("dimension must be >= 2");
  if (bounds_.max.dimension() != d) throw ValidationError("dimension mismatch: bounds.max");
  for (std::size_t i = 0; i < d; ++i) {
    if (!(bounds_.min[i] < bounds_.max[i])) throw ValidationError("bounds: min < max required on every axis");
  }
  if (!bounds_.min.all_finite() || !bounds_.max.all_finite()) throw ValidationError("bounds must be finite");
  if (start_.dimension() != d) throw ValidationError("dimension mismatch: start");
  if (goal_.dimension() != d) throw ValidationError("dimension mismatch: goal");
  if (!start_.all_finite() || !goal_.all_finite()) throw ValidationError("start/goal coordinates must be finite");
  if (!(goal_radius_ > 0.0) || !std::isfinite(goal_radius_)) throw ValidationError("goal_radius must be > 0");

  for (std::size_t k = 0; k < obstacles_.size(); ++k) {
    const std::string tag = "obstacle " + std::to_string(k);
    if (obstacle_dimension(obstacles_[k]) != d) throw ValidationError("dimension mismatch: " + tag);
    if (const auto* box = std::get_if<Box>(&obstacles_[k])) {
      for (std::size_t i = 0; i < d; ++i) {
        if (box->min[i] > box->max[i]) throw ValidationError(tag + ": box min <= max required");
      }
      if (!box->min.all_finite() || !box->max.all_finite()) throw ValidationError(tag + ": non-finite corner");
      if (!bounds_.contains(box->min) || !bounds_.contains(box->max)) {
        throw ValidationError(tag + ": obstacle must lie within bounds");
      }
    } else {
      const auto& s = std::get<Sphere>(obstacles_[k]);
      if (!(s.radius > 0.0) || !std::isfinite(s.radius)) throw ValidationError(tag + ": sphere radius > 0 required");
      if (!s.center.all_finite()) throw ValidationError(tag + ": non-finite center");
      for (std::size_t i = 0; i < d; ++i) {
        if (s.center[i] - s.radius < bounds_.min[i] || s.center[i] + s.radius > bounds_.max[i]) {
          throw ValidationError(tag + ": obstacle must lie within bounds");
        }
      }
    }
  }
  build_index();
  if (!is_free(start_)) throw ValidationError("start must be in free space " + describe(start_));
  if (!is_free(goal_)) throw ValidationError("goal must be in free space " + describe(goal_));
}

void Environment::check_dimension(const ConfigPoint& z, const char* what) const {
  if (z.dimension() != dimension()) {
    throw std::invalid_argument(std::string(what) + ": point has dimension " + std::to_string(z.dimension()) +
                                ", environment has " + std::to_string(dimension()));
  }
}

bool Environment::is_free(const ConfigPoint& z) const {
  check_dimension(z, "is_free");
  return bounds_.contains(z) && !point_in_obstacle(z);
}

bool Environment::point_in_obstacle(const ConfigPoint& z) const {
  if (index_.empty()) return false;
  const std::size_t d = z.dimension();
  std::uint32_t stack[64];
  std::size_t top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const IndexNode& n = index_[stack[--top]];
    if (!point_in_aabb(n.lo, n.hi, z, d)) continue;
    if (n.count == 0) {
      stack[top++] = n.left;
      stack[top++] = n.right;
      continue;
    }
    for (std::uint32_t k = n.first; k < n.first + n.count; ++k) {
      if (contains(obstacles_[index_order_[k]], z)) return true;
    }
  }
  return false;
}

bool Environment::in_goal_region(const ConfigPoint& z) const {
  return squared_distance(z, goal_) <= goal_radius_ * goal_radius_;
}

double Environment::nearest_obstacle_distance(const ConfigPoint& z) const {
  check_dimension(z, "nearest_obstacle_distance");
  if (index_.empty()) return kInfinity;
  const std::size_t d = z.dimension();
  double best = kInfinity;
  std::uint32_t stack[64];
  std::size_t top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const IndexNode& n = index_[stack[--top]];
    // Obstacles lie inside their node box, so the box distance bounds theirs.
    if (aabb_distance(n.lo, n.hi, z, d) >= best) continue;
    if (n.count == 0) {
      // Visit the closer child first.
      const double dl = aabb_distance(index_[n.left].lo, index_[n.left].hi, z, d);
      const double dr = aabb_distance(index_[n.right].lo, index_[n.right].hi, z, d);
      if (dl <= dr) {
        stack[top++] = n.right;
        stack[top++] = n.left;
      } else {
        stack[top++] = n.left;
        stack[top++] = n.right;
      }
      continue;
    }
    for (std::uint32_t k = n.first; k < n.first + n.count; ++k) {
      best = std::min(best, distance_to(obstacles_[index_order_[k]], z));
      if (best == 0.0) return 0.0;
    }
  }
  return best;
}

bool Environment::segment_free(const ConfigPoint& a, const ConfigPoint& b, double resolution) const {
  if (!(resolution > 0.0)) throw std::invalid_argument("segment_free: resolution must be > 0");
  if (!is_free(a) || !is_free(b)) return false;
  if (index_.empty()) return true;
  const std::size_t d = a.dimension();
  std::uint32_t stack[64];
  std::size_t top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const IndexNode& n = index_[stack[--top]];
    if (!segment_meets_aabb(n.lo, n.hi, a, b, d)) continue;
    if (n.count == 0) {
      stack[top++] = n.left;
      stack[top++] = n.right;
      continue;
    }
    for (std::uint32_t k = n.first; k < n.first + n.count; ++k) {
      if (segment_hits(obstacles_[index_order_[k]], a, b)) return false;
    }
  }
  return true;
}

void Environment::build_index() {
  index_.clear();
  index_order_.clear();
  if (obstacles_.empty()) return;
  const std::size_t d = dimension();
  const double pad = 1e-9 * (1.0 + bounds_.diagonal());

  std::vector<ConfigPoint> lo, hi, mid;
  for (const auto& o : obstacles_) {
    ConfigPoint l = ConfigPoint::zeros(d), h = ConfigPoint::zeros(d);
    if (const auto* box = std::get_if<Box>(&o)) {
      l = box->min;
      h = box->max;
    } else {
      const auto& sp = std::get<Sphere>(o);
      for (std::size_t i = 0; i < d; ++i) {
        l[i] = sp.center[i] - sp.radius;
        h[i] = sp.center[i] + sp.radius;
      }
    }
    for (std::size_t i = 0; i < d; ++i) {
      l[i] -= pad;
      h[i] += pad;
    }
    lo.push_back(l);
    hi.push_back(h);
    mid.push_back((l + h) * 0.5);
  }
  index_order_.resize(obstacles_.size());
  for (std::uint32_t k = 0; k < index_order_.size(); ++k) index_order_[k] = k;

  // Recursive median split on the widest axis of the centroid spread; depth
  // stays below log2(obstacles) + 1, far under the traversal stack size.
  constexpr std::uint32_t kLeafSize = 4;
  auto build = [&](auto& self, std::uint32_t first, std::uint32_t count) -> std::uint32_t {
    const auto id = static_cast<std::uint32_t>(index_.size());
    index_.push_back({});
    ConfigPoint l = lo[index_order_[first]], h = hi[index_order_[first]];
    ConfigPoint cl = mid[index_order_[first]], ch = cl;
    for (std::uint32_t k = first; k < first + count; ++k) {
      const auto o = index_order_[k];
      for (std::size_t i = 0; i < d; ++i) {
        l[i] = std::min(l[i], lo[o][i]);
        h[i] = std::max(h[i], hi[o][i]);
        cl[i] = std::min(cl[i], mid[o][i]);
        ch[i] = std::max(ch[i], mid[o][i]);
      }
    }
    index_[id].lo = l;
    index_[id].hi = h;
    if (count <= kLeafSize) {
      index_[id].first = first;
      index_[id].count = count;
      return id;
    }
    std::size_t axis = 0;
    for (std::size_t i = 1; i < d; ++i) {
      if (ch[i] - cl[i] > ch[axis] - cl[axis]) axis = i;
    }
    const std::uint32_t half = count / 2;
    std::nth_element(index_order_.begin() + first, index_order_.begin() + first + half,
                     index_order_.begin() + first + count, [&](std::uint32_t x, std::uint32_t y) {
                       return mid[x][axis] < mid[y][axis] || (mid[x][axis] == mid[y][axis] && x < y);
                     });
    const std::uint32_t left = self(self, first, half);
    const std::uint32_t right = self(self, first + half, count - half);
    index_[id].left = left;
    index_[id].right = right;
    return id;
  };
  build(build, 0, static_cast<std::uint32_t>(obstacles_.size()));
}

ConfigPoint Environment::sample_bounds(SeededRandomSource& rng) const {
  ConfigPoint z = ConfigPoint::zeros(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) z[i] = rng.uniform(bounds_.min[i], bounds_.max[i]);
  return z;
}

ConfigPoint Environment::sample_free(SeededRandomSource& rng) const {
  for (std::size_t attempt = 0; attempt < rejection_cap_; ++attempt) {
    ConfigPoint z = sample_bounds(rng);
    if (is_free(z)) return z;
  }
  throw DegenerateEnvironment("sample_free: no free sample after " + std::to_string(rejection_cap_) +
                              " draws");
}

double Environment::free_measure_estimate(std::size_t samples, SeededRandomSource& rng) const {
  if (samples == 0) throw std::invalid_argument("free_measure_estimate: samples must be >= 1");
  std::size_t free_count = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    if (is_free(sample_bounds(rng))) ++free_count;
  }
  return static_cast<double>(free_count) / static_cast<double>(samples) * bounds_.volume();
}

}  // namespace pgbrrt
