#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "pgbrrt/environment.hpp"
#include "pgbrrt/motion_tree.hpp"
#include "pgbrrt/planner_config.hpp"
#include "pgbrrt/planners.hpp"
#include "pgbrrt/scenario.hpp"

using namespace pgbrrt;

namespace {

Environment line_env() {
  return Environment(Bounds{{-2.0, -5.0}, {12.0, 5.0}}, {}, {0.0, 0.0}, {10.0, 0.0}, 0.5);
}

Environment walled_env() {
  return Environment(Bounds{{-2.0, -5.0}, {12.0, 5.0}}, {Box{{4.0, -5.0}, {4.5, 5.0}}}, {0.0, 0.0}, {10.0, 0.0},
                     0.5);
}

double resum(const Path& path) {
  double sum = 0.0;
  for (std::size_t k = 1; k < path.points.size(); ++k) sum += distance(path.points[k - 1], path.points[k]);
  return sum;
}

bool non_increasing(const std::vector<CostSample>& trace) {
  for (std::size_t k = 1; k < trace.size(); ++k) {
    if (trace[k].cost > trace[k - 1].cost) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("steer") {
  const Environment env = walled_env();
  const auto zero = steer({1.0, 1.0}, {1.0, 1.0}, env, 1e-3);
  REQUIRE(zero);
  CHECK(zero->length() == 0.0);
  CHECK(steer({0.0, 0.0}, {3.0, 2.0}, env, 1e-3));
  CHECK_FALSE(steer({0.0, 0.0}, {10.0, 0.0}, env, 1e-3));
}

TEST_CASE("extend") {
  const Environment env = walled_env();
  CHECK(extend({0.0, 0.0}, {10.0, 0.0}, 1.0, env, 1e-3) == std::optional<ConfigPoint>(ConfigPoint{1.0, 0.0}));
  CHECK(extend({0.0, 0.0}, {0.3, 0.4}, 1.0, env, 1e-3) == std::optional<ConfigPoint>(ConfigPoint{0.3, 0.4}));
  CHECK(extend({2.0, 2.0}, {2.0, 2.0}, 1.0, env, 1e-3) == std::optional<ConfigPoint>(ConfigPoint{2.0, 2.0}));
  CHECK_FALSE(extend({3.5, 0.0}, {10.0, 0.0}, 1.0, env, 1e-3));
}

TEST_CASE("connect") {
  const RadiusPolicy wide{50.0, 2, 50.0, 0.0};

  SUBCASE("five steps in open space") {
    const Environment env = line_env();
    MotionTree tree({0.0, 0.0});
    tree.insert({-1.0, 1.0}, 0);
    const auto r = connect(env, {5.0, 0.0}, 0, tree, 1.0, wide, 1e-3);
    REQUIRE(r);
    CHECK(r->extend_steps == 5);
    CHECK(r->parent == 0);
    CHECK(std::abs(r->cost - (tree.cost(r->parent) + r->link_length)) <= 1e-12);
    CHECK(std::abs(r->cost - 5.0) <= 1e-12);
  }
  SUBCASE("adjacent point") {
    const Environment env = line_env();
    MotionTree tree({0.0, 0.0});
    const auto r = connect(env, {0.5, 0.0}, 0, tree, 1.0, wide, 1e-3);
    REQUIRE(r);
    CHECK(r->extend_steps == 1);
  }
  SUBCASE("wall in the way") {
    const Environment env = walled_env();
    MotionTree tree({0.0, 0.0});
    CHECK_FALSE(connect(env, {8.0, 0.0}, 0, tree, 1.0, wide, 1e-3));
  }
}

TEST_CASE("get_best_tree_parent") {
  const Environment env = Environment(Bounds{{-2.0, -5.0}, {14.0, 5.0}}, {Box{{2.0, 1.0}, {2.5, 3.0}}}, {0.0, 0.0},
                                      {12.0, 0.0}, 0.5);
  MotionTree init_tree({0.0, 0.0});
  const MotionTree goal_tree({12.0, 0.0});
  const ConfigPoint z{5.0, 0.0};
  const std::vector<VertexId> root{0};
  const CandidateList a = list_sorting(init_tree, z, root);
  const CandidateList b = list_sorting(goal_tree, z, root);

  const auto joined = get_best_tree_parent(env, init_tree, goal_tree, z, a, b, true, 1e-3);
  REQUIRE(joined);
  CHECK(joined->side == TreeSide::Init);
  CHECK(joined->parent == 0);
  CHECK(joined->parent_cost == 5.0);
  CHECK(joined->other_parent == std::optional<VertexId>(0));
  CHECK(joined->path_cost == 12.0);

  const auto alone = get_best_tree_parent(env, init_tree, goal_tree, z, a, b, false, 1e-3);
  REQUIRE(alone);
  CHECK(alone->side == TreeSide::Init);
  CHECK_FALSE(alone->other_parent);
  CHECK(std::isinf(alone->path_cost));

  const auto one_sided = get_best_tree_parent(env, init_tree, goal_tree, z, a, {}, true, 1e-3);
  REQUIRE(one_sided);
  CHECK_FALSE(one_sided->other_parent);

  // The cheaper goal-side entry wins once the init side is blocked.
  init_tree.insert({0.0, 5.0}, 0);
  const ConfigPoint behind{4.0, 2.0};
  const std::vector<VertexId> both{0, 1};
  const CandidateList blocked = list_sorting(init_tree, behind, both);
  const auto choice = get_best_tree_parent(env, init_tree, goal_tree, behind, blocked,
                                           list_sorting(goal_tree, behind, root), true, 1e-3);
  REQUIRE(choice);
  CHECK(choice->side == TreeSide::Goal);
  CHECK(choice->parent == 0);
  CHECK(std::abs(choice->parent_cost - std::sqrt(68.0)) <= 1e-12);
  CHECK(std::abs(choice->path_cost - (10.0 + std::sqrt(68.0))) <= 1e-12);

  CHECK_FALSE(get_best_tree_parent(env, init_tree, goal_tree, z, {}, {}, true, 1e-3));
}

TEST_CASE("concatenate_solution") {
  const MotionTree a({0.0, 0.0});
  const MotionTree b({1.0, 0.0});
  const Path p = concatenate_solution(a, b, {0, 0});
  CHECK(p.points.size() == 2);
  CHECK(p.length() == 1.0);

  MotionTree init_tree({0.0, 0.0});
  MotionTree goal_tree({10.0, 0.0});
  init_tree.insert({2.0, 1.0}, 0);
  init_tree.insert({4.0, 1.5}, 1);
  goal_tree.insert({8.0, -1.0}, 0);
  goal_tree.insert({6.0, 0.5}, 1);
  const SolutionLink link{2, 2};
  const Path path = concatenate_solution(init_tree, goal_tree, link);
  CHECK(path.points.front() == init_tree.point(0));
  CHECK(path.points.back() == goal_tree.point(0));
  CHECK(std::abs(resum(path) - link_cost(init_tree, goal_tree, link)) <= 1e-9);
}

TEST_CASE("every planner converges in open space") {
  const Environment env = line_env();
  for (PlannerKind kind : kAllPlannerKinds) {
    CAPTURE(planner_name(kind));
    PlannerConfig cfg = default_config(env, kind);
    cfg.max_iterations = 20'000;
    cfg.seed = 1;
    const RunResult r = run_planner(env, cfg);
    CHECK_FALSE(r.failed);
    CHECK(r.best_cost <= 10.0 * 1.02);
    REQUIRE(r.best_path);
    CHECK(r.best_path->points.front() == env.start());
    CHECK(env.in_goal_region(r.best_path->points.back()));
    CHECK(std::abs(resum(*r.best_path) - r.best_cost) <= 1e-9);
    CHECK(path_is_valid(env, *r.best_path, cfg.collision_resolution));
    CHECK(non_increasing(r.cost_trace));
  }
}

TEST_CASE("an enclosed goal fails at the budget") {
  const Environment env = load_scenario_file(PGBRRT_SCENARIO_DIR "/enclosed2d.json");
  for (PlannerKind kind : {PlannerKind::RRTStar, PlannerKind::PIBRRTStar}) {
    PlannerConfig cfg = default_config(env, kind);
    cfg.max_iterations = 2000;
    const RunResult r = run_planner(env, cfg);
    CHECK(r.failed);
    CHECK_FALSE(r.best_path);
    CHECK(r.total_iterations == 2000);
  }
}

TEST_CASE("identical seeds give identical runs") {
  const Environment env = load_scenario_file(PGBRRT_SCENARIO_DIR "/cluttered2d.json");
  for (PlannerKind kind : kAllPlannerKinds) {
    CAPTURE(planner_name(kind));
    PlannerConfig cfg = default_config(env, kind);
    cfg.max_iterations = 1500;
    cfg.seed = 42;
    const RunResult a = run_planner(env, cfg);
    const RunResult b = run_planner(env, cfg);
    CHECK(a.best_cost == b.best_cost);
    CHECK(a.rewire_count == b.rewire_count);
    CHECK(a.first_solution_iteration == b.first_solution_iteration);
    CHECK(a.init_tree_size == b.init_tree_size);
    CHECK(a.goal_tree_size == b.goal_tree_size);
    REQUIRE(a.cost_trace.size() == b.cost_trace.size());
    for (std::size_t k = 0; k < a.cost_trace.size(); ++k) {
      CHECK(a.cost_trace[k].iteration == b.cost_trace[k].iteration);
      CHECK(a.cost_trace[k].cost == b.cost_trace[k].cost);
    }
  }
}

TEST_CASE("bidirectional paths start at the start after tree swaps") {
  const Environment env = load_scenario_file(PGBRRT_SCENARIO_DIR "/corridor2d.json");
  for (PlannerKind kind : {PlannerKind::BRRTStar, PlannerKind::PBRRTStar}) {
    PlannerSession session(env, default_config(env, kind));
    for (int k = 0; k < 3001 && !session.done(); ++k) session.step();
    const RunResult r = session.result();
    if (r.best_path) CHECK(r.best_path->points.front() == env.start());
    AuditOptions options;
    options.env = &env;
    CHECK(audit_tree(session.init_tree(), options).empty());
    CHECK(audit_tree(*session.goal_tree(), options).empty());
  }
}

TEST_CASE("stop_on_first and target_cost end the run early") {
  const Environment env = line_env();
  PlannerConfig cfg = default_config(env, PlannerKind::IBRRTStar);
  cfg.max_iterations = 50'000;
  cfg.stop_on_first = true;
  const RunResult first = run_planner(env, cfg);
  REQUIRE(first.first_solution_iteration);
  CHECK(first.total_iterations == *first.first_solution_iteration);

  cfg.stop_on_first = false;
  cfg.target_cost = 10.5;
  const RunResult target = run_planner(env, cfg);
  REQUIRE(target.target_iteration);
  CHECK(target.best_cost <= 10.5);
  CHECK(target.total_iterations == *target.target_iteration);
}

TEST_CASE("invalid configurations are rejected") {
  const Environment env = line_env();
  PlannerConfig cfg = default_config(env, PlannerKind::RRTStar);
  cfg.eps_steer = -1.0;
  CHECK_THROWS_AS(run_planner(env, cfg), std::invalid_argument);
  cfg = default_config(env, PlannerKind::RRTStar);
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("planner names") {
  for (PlannerKind kind : kAllPlannerKinds) CHECK(parse_planner_name(planner_name(kind)) == kind);
  CHECK(planner_name(PlannerKind::PIBRRTStar) == "pib-rrt-star");
  CHECK_FALSE(parse_planner_name("rrt"));
}
