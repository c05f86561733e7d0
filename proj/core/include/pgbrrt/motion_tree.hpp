#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgbrrt/environment.hpp"
#include "pgbrrt/kd_index.hpp"
#include "pgbrrt/point.hpp"

namespace pgbrrt {

using VertexId = std::uint32_t;

/// Shrinking-ball parameters. log_base <= 0 selects the natural log.
struct RadiusPolicy {
  double gamma = 1.0;
  std::size_t dimension = 2;
  double max_radius = 1.0;
  double log_base = 0.0;
};

/// gamma * (log n / n)^(1/d) for n >= 2; max_radius for n == 1.
double near_radius(std::size_t n, std::size_t dimension, double gamma, double max_radius, double log_base = 0.0);
double near_radius(std::size_t n, const RadiusPolicy& policy);

/// One rooted RRT with cost-to-root bookkeeping and a spatial index.
///
/// Invariant: cost(v) == cost(parent(v)) + edge_cost(v) for every non-root
/// vertex, re-established eagerly by reparent().
class MotionTree {
 public:
  explicit MotionTree(const ConfigPoint& root);

  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return points_.front().dimension(); }
  static constexpr VertexId root() { return 0; }

  const ConfigPoint& point(VertexId v) const { return points_[v]; }
  std::optional<VertexId> parent(VertexId v) const;
  double edge_cost(VertexId v) const { return edge_cost_[v]; }
  double cost(VertexId v) const { return cost_[v]; }
  std::span<const VertexId> children(VertexId v) const { return children_[v]; }
  const std::vector<ConfigPoint>& points() const { return points_; }

  VertexId nearest(const ConfigPoint& z) const;
  std::vector<VertexId> within(const ConfigPoint& z, double radius) const;

  /// Appends z as a child of parent. Feasibility of the edge is the caller's
  /// responsibility. Throws std::invalid_argument on a bad parent index.
  VertexId insert(const ConfigPoint& z, VertexId parent);

  /// Moves v under new_parent and refreshes the cost of v's whole subtree.
  void reparent(VertexId v, VertexId new_parent);

  bool contains(VertexId v) const { return v < points_.size(); }

 private:
  static constexpr VertexId kNoParent = UINT32_MAX;

  std::vector<ConfigPoint> points_;
  std::vector<VertexId> parent_;
  std::vector<double> edge_cost_;
  std::vector<double> cost_;
  std::vector<std::vector<VertexId>> children_;
  KdIndex index_;
};

/// Candidate parent for a query point: J' = cost(vertex) + link_length.
struct Candidate {
  VertexId vertex = 0;
  double total_cost = 0.0;
  double link_length = 0.0;
};

/// Sorted ascending by total_cost (ties by vertex id).
using CandidateList = std::vector<Candidate>;

VertexId nearest_vertex(const MotionTree& tree, const ConfigPoint& z);
std::vector<VertexId> neighboring_vertices(const MotionTree& tree, const ConfigPoint& z, const RadiusPolicy& policy);
CandidateList list_sorting(const MotionTree& tree, const ConfigPoint& z, std::span<const VertexId> near);

/// First candidate whose straight edge to z is collision-free.
std::optional<VertexId> pick_best_parent(const Environment& env, const MotionTree& tree, const ConfigPoint& z,
                                         const CandidateList& list, double resolution);

VertexId vertex_insert(MotionTree& tree, const ConfigPoint& z, VertexId parent);

/// Strict-improvement slack used by rewiring.
inline constexpr double kRewireTolerance = 1e-12;

/// Reparents every listed vertex that becomes strictly cheaper through
/// new_vertex. Returns the number of reparent operations.
std::size_t rewiring_vertices(const Environment& env, MotionTree& tree, VertexId new_vertex,
                              const CandidateList& list, double resolution);

/// Root-to-v vertex sequence.
Path extract_path(const MotionTree& tree, VertexId v);

struct AuditOptions {
  double cost_tolerance = 1e-9;
  /// When set, every edge is also checked with segment_free.
  const Environment* env = nullptr;
  double resolution = 1e-3;
};

/// Full structural check: parent ranges, acyclicity, child lists, cost
/// recursion, optional edge feasibility. Returns human-readable violations.
std::vector<std::string> audit_tree(const MotionTree& tree, const AuditOptions& options = {});

/// One line per vertex: `id, parent_id, coords..., cost_to_root` (root parent is -1).
std::string dump_tree(const MotionTree& tree);

/// Parsed form of a dump, enough for rendering.
struct TreeDump {
  std::vector<ConfigPoint> points;
  std::vector<long long> parents;
  std::vector<double> costs;
};
TreeDump parse_tree_dump(std::string_view text);

}  // namespace pgbrrt
