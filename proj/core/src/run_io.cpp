#include "pgbrrt/run_io.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "pgbrrt/errors.hpp"

namespace pgbrrt {
namespace {

using Json = nlohmann::ordered_json;

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

template <typename T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

Json point_json(const ConfigPoint& z) {
  Json arr = Json::array();
  for (double c : z.coords()) arr.push_back(c);
  return arr;
}

ConfigPoint point_from(const Json& j) {
  if (!j.is_array()) throw ParseError("run: point must be an array");
  std::vector<double> coords = j.get<std::vector<double>>();
  return ConfigPoint(coords);
}

Json config_json(const PlannerConfig& c) {
  return Json{{"planner", std::string(planner_name(c.kind))},
              {"gamma", c.gamma},
              {"eps_steer", c.eps_steer},
              {"collision_resolution", c.collision_resolution},
              {"max_radius", c.max_radius},
              {"log_base", c.log_base},
              {"max_iterations", c.max_iterations},
              {"seed", c.seed},
              {"kp", c.potential.attractive_gain},
              {"eps_pot", c.potential.step},
              {"n_steps", c.potential.steps},
              {"d_obs", c.potential.obstacle_stop_distance},
              {"stop_on_first", c.stop_on_first},
              {"target_cost", optional_json(c.target_cost)},
              {"cost_trace_stride", c.cost_trace_stride},
              {"bpg_pull_toward_active_root", c.bpg_pull_toward_active_root}};
}

PlannerConfig config_from(const Json& j) {
  PlannerConfig c;
  const auto kind = parse_planner_name(j.at("planner").get<std::string>());
  if (!kind) throw ParseError("run: unknown planner " + j.at("planner").dump());
  c.kind = *kind;
  c.gamma = j.at("gamma").get<double>();
  c.eps_steer = j.at("eps_steer").get<double>();
  c.collision_resolution = j.at("collision_resolution").get<double>();
  c.max_radius = j.at("max_radius").get<double>();
  c.log_base = j.at("log_base").get<double>();
  c.max_iterations = j.at("max_iterations").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.potential.attractive_gain = j.at("kp").get<double>();
  c.potential.step = j.at("eps_pot").get<double>();
  c.potential.steps = j.at("n_steps").get<std::size_t>();
  c.potential.obstacle_stop_distance = j.at("d_obs").get<double>();
  c.stop_on_first = j.at("stop_on_first").get<bool>();
  if (!j.at("target_cost").is_null()) c.target_cost = j.at("target_cost").get<double>();
  c.cost_trace_stride = j.at("cost_trace_stride").get<std::size_t>();
  c.bpg_pull_toward_active_root = j.at("bpg_pull_toward_active_root").get<bool>();
  return c;
}

template <typename T>
std::optional<T> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

double cost_from(const Json& j) { return j.is_null() ? kNoCost : j.get<double>(); }

}  // namespace

std::string library_version() { return PGBRRT_VERSION; }

std::string serialize_run(const RunResult& r, const PlannerConfig& config, std::string_view scenario_name) {
  Json doc;
  doc["library_version"] = library_version();
  doc["scenario"] = std::string(scenario_name);
  doc["planner"] = std::string(planner_name(r.kind));
  doc["seed"] = r.seed;
  doc["config"] = config_json(config);
  doc["failed"] = r.failed;
  doc["best_cost"] = number_or_null(r.best_cost);
  if (r.best_path) {
    Json pts = Json::array();
    for (const auto& p : r.best_path->points) pts.push_back(point_json(p));
    doc["best_path"] = std::move(pts);
  } else {
    doc["best_path"] = nullptr;
  }
  doc["first_solution_iteration"] = optional_json(r.first_solution_iteration);
  doc["first_solution_time"] = optional_json(r.first_solution_time);
  doc["target_iteration"] = optional_json(r.target_iteration);
  doc["target_time"] = optional_json(r.target_time);
  doc["total_iterations"] = r.total_iterations;
  doc["wall_time"] = r.wall_time;
  doc["rewire_count"] = r.rewire_count;
  doc["theta"] = r.theta;
  doc["init_tree_size"] = r.init_tree_size;
  doc["goal_tree_size"] = r.goal_tree_size;
  doc["mean_guidance_displacement"] = r.mean_guidance_displacement;
  Json trace = Json::array();
  for (const auto& s : r.cost_trace) {
    trace.push_back(Json{{"iteration", s.iteration}, {"cost", number_or_null(s.cost)}, {"elapsed", s.elapsed_seconds}});
  }
  doc["cost_trace"] = std::move(trace);
  return doc.dump(2) + "\n";
}

StoredRun parse_run(std::string_view text) {
  try {
    const Json doc = Json::parse(text.begin(), text.end());
    StoredRun out;
    out.scenario_name = doc.at("scenario").get<std::string>();
    out.config = config_from(doc.at("config"));
    RunResult& r = out.result;
    const auto kind = parse_planner_name(doc.at("planner").get<std::string>());
    if (!kind) throw ParseError("run: unknown planner");
    r.kind = *kind;
    r.seed = doc.at("seed").get<std::uint64_t>();
    r.failed = doc.at("failed").get<bool>();
    r.best_cost = cost_from(doc.at("best_cost"));
    if (!doc.at("best_path").is_null()) {
      Path p;
      for (const auto& pt : doc.at("best_path")) p.points.push_back(point_from(pt));
      r.best_path = std::move(p);
    }
    r.first_solution_iteration = optional_from<std::size_t>(doc.at("first_solution_iteration"));
    r.first_solution_time = optional_from<double>(doc.at("first_solution_time"));
    r.target_iteration = optional_from<std::size_t>(doc.at("target_iteration"));
    r.target_time = optional_from<double>(doc.at("target_time"));
    r.total_iterations = doc.at("total_iterations").get<std::size_t>();
    r.wall_time = doc.at("wall_time").get<double>();
    r.rewire_count = doc.at("rewire_count").get<std::size_t>();
    r.theta = doc.at("theta").get<double>();
    r.init_tree_size = doc.at("init_tree_size").get<std::size_t>();
    r.goal_tree_size = doc.at("goal_tree_size").get<std::size_t>();
    r.mean_guidance_displacement = doc.at("mean_guidance_displacement").get<double>();
    for (const auto& s : doc.at("cost_trace")) {
      r.cost_trace.push_back(
          {s.at("iteration").get<std::size_t>(), cost_from(s.at("cost")), s.at("elapsed").get<double>()});
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("run: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("run: ") + e.what());
  }
}

std::string serialize_config(const PlannerConfig& config) { return config_json(config).dump(2) + "\n"; }

PlannerConfig parse_config(std::string_view text) {
  try {
    return config_from(Json::parse(text.begin(), text.end()));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

}  // namespace pgbrrt
