#pragma once

#include <chrono>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "pgbrrt/environment.hpp"
#include "pgbrrt/motion_tree.hpp"
#include "pgbrrt/planner_config.hpp"
#include "pgbrrt/random.hpp"

namespace pgbrrt {

inline constexpr double kNoCost = std::numeric_limits<double>::infinity();

struct CostSample {
  std::size_t iteration = 0;
  double cost = kNoCost;
  double elapsed_seconds = 0.0;
};

struct RunResult {
  PlannerKind kind = PlannerKind::RRTStar;
  std::uint64_t seed = 0;
  std::optional<Path> best_path;
  double best_cost = kNoCost;
  std::optional<std::size_t> first_solution_iteration;
  std::optional<double> first_solution_time;
  std::optional<std::size_t> target_iteration;
  std::optional<double> target_time;
  std::size_t total_iterations = 0;
  double wall_time = 0.0;
  std::size_t rewire_count = 0;
  double theta = 0.0;
  std::vector<CostSample> cost_trace;
  bool failed = true;
  std::size_t init_tree_size = 0;
  std::size_t goal_tree_size = 0;
  double mean_guidance_displacement = 0.0;
};

// ---- shared sub-heuristics -------------------------------------------------

/// Straight segment a->b when collision-free.
std::optional<Path> steer(const ConfigPoint& a, const ConfigPoint& b, const Environment& env, double resolution);

/// Moves at most eps from z_nearest toward z_target. Absent when the new
/// point or the segment to it is not free.
std::optional<ConfigPoint> extend(const ConfigPoint& z_nearest, const ConfigPoint& z_target, double eps,
                                  const Environment& env, double resolution);

struct ConnectResult {
  VertexId parent = 0;       // best parent in the connected tree
  double link_length = 0.0;  // |parent - z_new|
  double cost = 0.0;         // cost(parent) + link_length
  std::size_t extend_steps = 0;
};

/// Greedy connection from `z_conn` in `tree` toward z_new, followed by a
/// best-parent choice among the neighbors of z_new in `tree`.
std::optional<ConnectResult> connect(const Environment& env, const ConfigPoint& z_new, VertexId z_conn,
                                     const MotionTree& tree, double eps_steer, const RadiusPolicy& policy,
                                     double resolution);

enum class TreeSide { Init, Goal };

struct TreeParentChoice {
  VertexId parent = 0;
  TreeSide side = TreeSide::Init;
  double parent_cost = 0.0;  // feasible J' on the chosen side
  /// Present when connecting: the other side's best feasible parent and the
  /// end-to-end cost through the query point.
  std::optional<VertexId> other_parent;
  double path_cost = kNoCost;
};

/// Best feasible parent across both trees for query point z. Absent when
/// neither list has a feasible entry.
std::optional<TreeParentChoice> get_best_tree_parent(const Environment& env, const MotionTree& init_tree,
                                                     const MotionTree& goal_tree, const ConfigPoint& z,
                                                     const CandidateList& init_list,
                                                     const CandidateList& goal_list, bool connection,
                                                     double resolution);

/// A collision-free straight bridge between a vertex of each tree.
struct SolutionLink {
  VertexId init_vertex = 0;
  VertexId goal_vertex = 0;
};

double link_cost(const MotionTree& init_tree, const MotionTree& goal_tree, const SolutionLink& link);

/// Start-to-goal path: init-side root path followed by the reversed goal-side
/// root path.
Path concatenate_solution(const MotionTree& init_tree, const MotionTree& goal_tree, const SolutionLink& link);

// ---- planner loop ----------------------------------------------------------

/// One planner run, driven iteration by iteration. The environment must
/// outlive the session.
class PlannerSession {
 public:
  PlannerSession(const Environment& env, PlannerConfig config);

  /// Runs one iteration. Returns false once the run has terminated.
  bool step();
  void run();
  bool done() const { return done_; }

  std::size_t iteration() const { return iteration_; }
  double best_cost() const;
  const PlannerConfig& config() const { return config_; }
  const MotionTree& init_tree() const { return init_tree_; }
  /// Null for unidirectional planners.
  const MotionTree* goal_tree() const { return goal_tree_ ? &*goal_tree_ : nullptr; }
  std::optional<SolutionLink> best_link() const { return best_link_; }
  std::optional<VertexId> best_goal_vertex() const { return best_goal_vertex_; }

  const ConfigPoint& last_raw_sample() const { return last_raw_; }
  const ConfigPoint& last_guided_sample() const { return last_guided_; }

  /// Snapshot of the run. The returned path is re-validated against the
  /// environment; a failed check throws std::logic_error.
  RunResult result() const;

 private:
  ConfigPoint guide(const ConfigPoint& z_rand);
  void step_unidirectional();
  void step_greedy_bidirectional();
  void step_intelligent_bidirectional();
  void offer_link(const SolutionLink& link);
  void refresh_goal_best();
  void after_iteration(double elapsed);
  std::optional<Path> current_path() const;

  struct Placement {
    VertexId vertex;
    bool inserted;
  };
  Placement place(MotionTree& tree, const ConfigPoint& z, VertexId parent);

  const Environment& env_;
  PlannerConfig config_;
  RadiusPolicy policy_;
  SeededRandomSource rng_;
  MotionTree init_tree_;
  std::optional<MotionTree> goal_tree_;

  std::size_t iteration_ = 0;
  bool done_ = false;
  bool active_is_init_ = true;

  std::vector<VertexId> goal_vertices_;
  std::optional<VertexId> best_goal_vertex_;
  std::optional<SolutionLink> best_link_;

  std::size_t rewires_ = 0;
  double displacement_sum_ = 0.0;
  double elapsed_ = 0.0;
  double last_trace_cost_ = kNoCost;

  std::optional<std::size_t> first_iteration_;
  std::optional<double> first_time_;
  std::optional<std::size_t> target_iteration_;
  std::optional<double> target_time_;
  std::vector<CostSample> trace_;

  ConfigPoint last_raw_;
  ConfigPoint last_guided_;
};

/// Runs a full planner loop. Deterministic for fixed (env, config) apart
/// from the wall-clock fields.
RunResult run_planner(const Environment& env, const PlannerConfig& config);

/// Segment-by-segment collision check of a path plus endpoint checks.
bool path_is_valid(const Environment& env, const Path& path, double resolution);

}  // namespace pgbrrt
