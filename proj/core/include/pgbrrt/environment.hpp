#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pgbrrt/point.hpp"
#include "pgbrrt/random.hpp"

namespace pgbrrt {

/// Closed axis-aligned box.
struct Box {
  ConfigPoint min;
  ConfigPoint max;
};

/// Closed ball.
struct Sphere {
  ConfigPoint center;
  double radius = 0.0;
};

using Obstacle = std::variant<Box, Sphere>;

/// Axis-aligned workspace bounds (closed).
struct Bounds {
  ConfigPoint min;
  ConfigPoint max;

  bool contains(const ConfigPoint& z) const;
  double volume() const;
  double diagonal() const;
};

inline constexpr std::size_t kDefaultRejectionCap = 1'000'000;

/// Configuration space, planning triplet and every geometric query the
/// planners need. Immutable after construction; share freely across threads.
///
/// Obstacles are closed sets, so a point on an obstacle face is not free and
/// is_free(z) holds exactly when z is in bounds and nearest_obstacle_distance(z) > 0.
class Environment {
 public:
  /// Validates every invariant and throws ValidationError naming the first
  /// one that fails.
  Environment(Bounds bounds, std::vector<Obstacle> obstacles, ConfigPoint start, ConfigPoint goal,
              double goal_radius);

  std::size_t dimension() const { return bounds_.min.dimension(); }
  const Bounds& bounds() const { return bounds_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }
  const ConfigPoint& start() const { return start_; }
  const ConfigPoint& goal() const { return goal_; }
  double goal_radius() const { return goal_radius_; }

  /// Scenario metadata carried through load/serialize.
  const std::optional<double>& reference_cost() const { return reference_cost_; }
  void set_reference_cost(std::optional<double> cost) { reference_cost_ = cost; }
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  std::size_t rejection_cap() const { return rejection_cap_; }
  void set_rejection_cap(std::size_t cap) { rejection_cap_ = cap; }

  bool is_free(const ConfigPoint& z) const;
  bool in_goal_region(const ConfigPoint& z) const;

  /// Euclidean distance to the closest obstacle point; 0 inside an obstacle,
  /// +infinity when there are no obstacles.
  double nearest_obstacle_distance(const ConfigPoint& z) const;

  /// Exact closed-set test of segment ab against every obstacle, plus endpoint
  /// membership. The result does not depend on `resolution` for the supported
  /// shapes; it only has to be positive.
  bool segment_free(const ConfigPoint& a, const ConfigPoint& b, double resolution) const;

  /// Uniform point of Z_free by rejection over the bounds.
  ConfigPoint sample_free(SeededRandomSource& rng) const;
  ConfigPoint sample_bounds(SeededRandomSource& rng) const;

  /// Monte-Carlo estimate of mu(Z_free).
  double free_measure_estimate(std::size_t samples, SeededRandomSource& rng) const;

 private:
  void check_dimension(const ConfigPoint& z, const char* what) const;
  void build_index();
  bool point_in_obstacle(const ConfigPoint& z) const;

  // Bounding-volume hierarchy over obstacle boxes, slightly inflated so the
  // broadphase never rejects a contact the exact shape test would report.
  struct IndexNode {
    ConfigPoint lo, hi;
    std::uint32_t left = 0, right = 0;  // children when count == 0
    std::uint32_t first = 0, count = 0;  // range in index_order_ for leaves
  };

  Bounds bounds_;
  std::vector<Obstacle> obstacles_;
  ConfigPoint start_;
  ConfigPoint goal_;
  double goal_radius_;
  std::optional<double> reference_cost_;
  std::string name_;
  std::size_t rejection_cap_ = kDefaultRejectionCap;
  std::vector<IndexNode> index_;
  std::vector<std::uint32_t> index_order_;
};

// Shape-level primitives, exposed for tests and diagnostics.
double distance_to_box(const Box& box, const ConfigPoint& z);
double distance_to_sphere(const Sphere& sphere, const ConfigPoint& z);
bool segment_hits_box(const Box& box, const ConfigPoint& a, const ConfigPoint& b);
bool segment_hits_sphere(const Sphere& sphere, const ConfigPoint& a, const ConfigPoint& b);

}  // namespace pgbrrt
