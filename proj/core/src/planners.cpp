#include "pgbrrt/planners.hpp"

#include <algorithm>
#include <stdexcept>

#include "pgbrrt/potential.hpp"

namespace pgbrrt {

std::optional<Path> steer(const ConfigPoint& a, const ConfigPoint& b, const Environment& env, double resolution) {
  if (!env.segment_free(a, b, resolution)) return std::nullopt;
  return Path{{a, b}};
}

std::optional<ConfigPoint> extend(const ConfigPoint& z_nearest, const ConfigPoint& z_target, double eps,
                                  const Environment& env, double resolution) {
  const double dist = distance(z_nearest, z_target);
  ConfigPoint z_new = dist <= eps ? z_target : z_nearest + (z_target - z_nearest) * (eps / dist);
  if (!env.is_free(z_new) || !env.segment_free(z_nearest, z_new, resolution)) return std::nullopt;
  return z_new;
}

std::optional<ConnectResult> connect(const Environment& env, const ConfigPoint& z_new, VertexId z_conn,
                                     const MotionTree& tree, double eps_steer, const RadiusPolicy& policy,
                                     double resolution) {
  ConnectResult result;
  ConfigPoint cursor = tree.point(z_conn);
  while (distance(cursor, z_new) > resolution) {
    const auto next = extend(cursor, z_new, eps_steer, env, resolution);
    if (!next) return std::nullopt;
    cursor = *next;
    ++result.extend_steps;
  }

  std::vector<VertexId> near = neighboring_vertices(tree, z_new, policy);
  if (near.empty()) near.push_back(z_conn);
  const CandidateList list = list_sorting(tree, z_new, near);
  const auto parent = pick_best_parent(env, tree, z_new, list, resolution);
  if (!parent) return std::nullopt;
  result.parent = *parent;
  result.link_length = distance(tree.point(*parent), z_new);
  result.cost = tree.cost(*parent) + result.link_length;
  return result;
}

namespace {

struct FeasibleBest {
  VertexId vertex;
  double cost;
};

std::optional<FeasibleBest> first_feasible(const Environment& env, const MotionTree& tree, const ConfigPoint& z,
                                           const CandidateList& list, double resolution) {
  for (const Candidate& c : list) {
    if (env.segment_free(tree.point(c.vertex), z, resolution)) return FeasibleBest{c.vertex, c.total_cost};
  }
  return std::nullopt;
}

}  // namespace

std::optional<TreeParentChoice> get_best_tree_parent(const Environment& env, const MotionTree& init_tree,
                                                     const MotionTree& goal_tree, const ConfigPoint& z,
                                                     const CandidateList& init_list,
                                                     const CandidateList& goal_list, bool connection,
                                                     double resolution) {
  const auto a = first_feasible(env, init_tree, z, init_list, resolution);
  const auto b = first_feasible(env, goal_tree, z, goal_list, resolution);
  if (!a && !b) return std::nullopt;

  TreeParentChoice choice;
  const bool pick_init = a && (!b || a->cost <= b->cost);
  const FeasibleBest& chosen = pick_init ? *a : *b;
  choice.parent = chosen.vertex;
  choice.side = pick_init ? TreeSide::Init : TreeSide::Goal;
  choice.parent_cost = chosen.cost;
  if (connection && a && b) {
    choice.other_parent = pick_init ? b->vertex : a->vertex;
    choice.path_cost = a->cost + b->cost;
  }
  return choice;
}

double link_cost(const MotionTree& init_tree, const MotionTree& goal_tree, const SolutionLink& link) {
  return init_tree.cost(link.init_vertex) +
         distance(init_tree.point(link.init_vertex), goal_tree.point(link.goal_vertex)) +
         goal_tree.cost(link.goal_vertex);
}

Path concatenate_solution(const MotionTree& init_tree, const MotionTree& goal_tree, const SolutionLink& link) {
  Path path = extract_path(init_tree, link.init_vertex);
  Path tail = extract_path(goal_tree, link.goal_vertex);
  for (auto it = tail.points.rbegin(); it != tail.points.rend(); ++it) {
    if (!(path.points.back() == *it)) path.points.push_back(*it);
  }
  return path;
}

bool path_is_valid(const Environment& env, const Path& path, double resolution) {
  if (path.points.empty()) return false;
  for (const auto& p : path.points) {
    if (!env.is_free(p)) return false;
  }
  for (std::size_t i = 1; i < path.points.size(); ++i) {
    if (!env.segment_free(path.points[i - 1], path.points[i], resolution)) return false;
  }
  return true;
}

PlannerSession::PlannerSession(const Environment& env, PlannerConfig config)
    : env_(env),
      config_(std::move(config)),
      rng_(config_.seed),
      init_tree_(env.start()),
      last_raw_(env.start()),
      last_guided_(env.start()) {
  config_.validate();
  policy_ = RadiusPolicy{config_.gamma, env.dimension(), config_.max_radius, config_.log_base};
  if (is_bidirectional(config_.kind)) goal_tree_.emplace(env.goal());
  if (!is_bidirectional(config_.kind) && env.in_goal_region(env.start())) {
    goal_vertices_.push_back(MotionTree::root());
    refresh_goal_best();
  }
}

double PlannerSession::best_cost() const {
  if (best_link_) return link_cost(init_tree_, *goal_tree_, *best_link_);
  if (best_goal_vertex_) return init_tree_.cost(*best_goal_vertex_);
  return kNoCost;
}

ConfigPoint PlannerSession::guide(const ConfigPoint& z_rand) {
  ConfigPoint z = z_rand;
  switch (config_.kind) {
    case PlannerKind::PRRTStar:
      z = rgd(z_rand, env_.goal(), config_.potential, env_);
      break;
    case PlannerKind::PBRRTStar:
    case PlannerKind::PIBRRTStar: {
      const std::size_t parity = iteration_ + (config_.bpg_pull_toward_active_root ? 1 : 0);
      z = bpg(z_rand, parity, env_.start(), env_.goal(), config_.potential, env_);
      break;
    }
    default:
      break;
  }
  last_raw_ = z_rand;
  last_guided_ = z;
  displacement_sum_ += distance(z_rand, z);
  return z;
}

// A sample that coincides with its chosen parent is already in the tree.
PlannerSession::Placement PlannerSession::place(MotionTree& tree, const ConfigPoint& z, VertexId parent) {
  if (tree.point(parent) == z) return {parent, false};
  return {vertex_insert(tree, z, parent), true};
}

void PlannerSession::step_unidirectional() {
  const ConfigPoint z = guide(env_.sample_free(rng_));

  std::vector<VertexId> near = neighboring_vertices(init_tree_, z, policy_);
  if (near.empty()) near.push_back(nearest_vertex(init_tree_, z));
  const CandidateList list = list_sorting(init_tree_, z, near);
  const auto parent = pick_best_parent(env_, init_tree_, z, list, config_.collision_resolution);
  if (!parent) return;

  const Placement placed = place(init_tree_, z, *parent);
  if (placed.inserted) {
    rewires_ += rewiring_vertices(env_, init_tree_, placed.vertex, list, config_.collision_resolution);
    if (env_.in_goal_region(z)) goal_vertices_.push_back(placed.vertex);
  }
  refresh_goal_best();
}

void PlannerSession::refresh_goal_best() {
  for (VertexId v : goal_vertices_) {
    if (!best_goal_vertex_ || init_tree_.cost(v) < init_tree_.cost(*best_goal_vertex_)) best_goal_vertex_ = v;
  }
}

void PlannerSession::offer_link(const SolutionLink& link) {
  if (!best_link_ || link_cost(init_tree_, *goal_tree_, link) < best_cost()) best_link_ = link;
}

void PlannerSession::step_greedy_bidirectional() {
  MotionTree& active = active_is_init_ ? init_tree_ : *goal_tree_;
  MotionTree& other = active_is_init_ ? *goal_tree_ : init_tree_;
  const bool active_is_init = active_is_init_;
  active_is_init_ = !active_is_init_;

  const ConfigPoint target = guide(env_.sample_free(rng_));
  const VertexId nearest = nearest_vertex(active, target);
  const auto z_new = extend(active.point(nearest), target, config_.eps_steer, env_, config_.collision_resolution);
  if (!z_new) return;

  std::vector<VertexId> near = neighboring_vertices(active, *z_new, policy_);
  if (near.empty()) near.push_back(nearest);
  const CandidateList list = list_sorting(active, *z_new, near);
  const auto parent = pick_best_parent(env_, active, *z_new, list, config_.collision_resolution);
  if (!parent) return;

  const Placement placed = place(active, *z_new, *parent);
  if (placed.inserted) {
    rewires_ += rewiring_vertices(env_, active, placed.vertex, list, config_.collision_resolution);
  }

  const VertexId z_conn = nearest_vertex(other, *z_new);
  const auto bridge =
      connect(env_, *z_new, z_conn, other, config_.eps_steer, policy_, config_.collision_resolution);
  if (!bridge) return;
  offer_link(active_is_init ? SolutionLink{placed.vertex, bridge->parent}
                            : SolutionLink{bridge->parent, placed.vertex});
}

void PlannerSession::step_intelligent_bidirectional() {
  const ConfigPoint z = guide(env_.sample_free(rng_));
  MotionTree& goal_tree = *goal_tree_;

  std::vector<VertexId> near_init = neighboring_vertices(init_tree_, z, policy_);
  std::vector<VertexId> near_goal = neighboring_vertices(goal_tree, z, policy_);
  bool connection = true;
  if (near_init.empty() && near_goal.empty()) {
    near_init.push_back(nearest_vertex(init_tree_, z));
    near_goal.push_back(nearest_vertex(goal_tree, z));
    connection = false;
  }
  const CandidateList init_list = list_sorting(init_tree_, z, near_init);
  const CandidateList goal_list = list_sorting(goal_tree, z, near_goal);
  const auto choice = get_best_tree_parent(env_, init_tree_, goal_tree, z, init_list, goal_list, connection,
                                           config_.collision_resolution);
  if (!choice) return;

  const bool into_init = choice->side == TreeSide::Init;
  MotionTree& tree = into_init ? init_tree_ : goal_tree;
  const Placement placed = place(tree, z, choice->parent);
  if (placed.inserted) {
    rewires_ += rewiring_vertices(env_, tree, placed.vertex, into_init ? init_list : goal_list,
                                  config_.collision_resolution);
  }
  if (choice->other_parent) {
    offer_link(into_init ? SolutionLink{placed.vertex, *choice->other_parent}
                         : SolutionLink{*choice->other_parent, placed.vertex});
  }
}

void PlannerSession::after_iteration(double elapsed) {
  ++iteration_;
  elapsed_ += elapsed;
  const double cost = best_cost();
  const bool improved = cost < last_trace_cost_;
  const bool stride_hit = config_.cost_trace_stride > 0 && iteration_ % config_.cost_trace_stride == 0;
  if (improved || stride_hit) {
    trace_.push_back({iteration_, cost, elapsed_});
    last_trace_cost_ = std::min(last_trace_cost_, cost);
  }
  if (cost < kNoCost && !first_iteration_) {
    first_iteration_ = iteration_;
    first_time_ = elapsed_;
  }
  if (config_.target_cost && cost <= *config_.target_cost && !target_iteration_) {
    target_iteration_ = iteration_;
    target_time_ = elapsed_;
  }
  if (iteration_ >= config_.max_iterations || (config_.stop_on_first && first_iteration_) || target_iteration_) {
    done_ = true;
  }
}

bool PlannerSession::step() {
  if (done_) return false;
  const auto t0 = std::chrono::steady_clock::now();
  switch (config_.kind) {
    case PlannerKind::RRTStar:
    case PlannerKind::PRRTStar:
      step_unidirectional();
      break;
    case PlannerKind::BRRTStar:
    case PlannerKind::PBRRTStar:
      step_greedy_bidirectional();
      break;
    case PlannerKind::IBRRTStar:
    case PlannerKind::PIBRRTStar:
      step_intelligent_bidirectional();
      break;
  }
  const auto t1 = std::chrono::steady_clock::now();
  after_iteration(std::chrono::duration<double>(t1 - t0).count());
  return !done_;
}

void PlannerSession::run() {
  while (step()) {
  }
}

std::optional<Path> PlannerSession::current_path() const {
  if (best_link_) return concatenate_solution(init_tree_, *goal_tree_, *best_link_);
  if (best_goal_vertex_) return extract_path(init_tree_, *best_goal_vertex_);
  return std::nullopt;
}

RunResult PlannerSession::result() const {
  RunResult r;
  r.kind = config_.kind;
  r.seed = config_.seed;
  r.best_path = current_path();
  r.best_cost = best_cost();
  if (r.best_path) {
    if (!path_is_valid(env_, *r.best_path, config_.collision_resolution)) {
      throw std::logic_error("planner produced a path that fails collision re-validation");
    }
    if (!(r.best_path->points.front() == env_.start()) || !env_.in_goal_region(r.best_path->points.back())) {
      throw std::logic_error("planner produced a path that does not join start and goal region");
    }
  }
  r.first_solution_iteration = first_iteration_;
  r.first_solution_time = first_time_;
  r.target_iteration = target_iteration_;
  r.target_time = target_time_;
  r.total_iterations = iteration_;
  r.wall_time = elapsed_;
  r.rewire_count = rewires_;
  r.theta = iteration_ ? static_cast<double>(rewires_) / static_cast<double>(iteration_) : 0.0;
  r.cost_trace = trace_;
  r.failed = !r.best_path.has_value();
  r.init_tree_size = init_tree_.size();
  r.goal_tree_size = goal_tree_ ? goal_tree_->size() : 0;
  r.mean_guidance_displacement = iteration_ ? displacement_sum_ / static_cast<double>(iteration_) : 0.0;
  return r;
}

RunResult run_planner(const Environment& env, const PlannerConfig& config) {
  PlannerSession session(env, config);
  session.run();
  return session.result();
}

}  // namespace pgbrrt
