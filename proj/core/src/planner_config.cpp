#include "pgbrrt/planner_config.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pgbrrt/errors.hpp"

namespace pgbrrt {

std::string_view planner_name(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::RRTStar: return "rrt-star";
    case PlannerKind::PRRTStar: return "p-rrt-star";
    case PlannerKind::BRRTStar: return "b-rrt-star";
    case PlannerKind::IBRRTStar: return "ib-rrt-star";
    case PlannerKind::PBRRTStar: return "pb-rrt-star";
    case PlannerKind::PIBRRTStar: return "pib-rrt-star";
  }
  return "unknown";
}

std::optional<PlannerKind> parse_planner_name(std::string_view name) {
  for (PlannerKind k : kAllPlannerKinds) {
    if (planner_name(k) == name) return k;
  }
  return std::nullopt;
}

bool uses_potential(PlannerKind kind) {
  return kind == PlannerKind::PRRTStar || kind == PlannerKind::PBRRTStar || kind == PlannerKind::PIBRRTStar;
}

bool is_bidirectional(PlannerKind kind) {
  return kind != PlannerKind::RRTStar && kind != PlannerKind::PRRTStar;
}

void PlannerConfig::validate() const {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(gamma)) throw std::invalid_argument("config: gamma must be > 0");
  if (!positive(eps_steer)) throw std::invalid_argument("config: eps_steer must be > 0");
  if (!positive(collision_resolution)) throw std::invalid_argument("config: collision_resolution must be > 0");
  if (!positive(max_radius)) throw std::invalid_argument("config: max_radius must be > 0");
  if (max_iterations < 1) throw std::invalid_argument("config: max_iterations must be >= 1");
  if (log_base > 0.0 && log_base == 1.0) throw std::invalid_argument("config: log_base must not be 1");
  if (target_cost && !(*target_cost > 0.0)) throw std::invalid_argument("config: target_cost must be > 0");
  if (uses_potential(kind)) potential.validate();
}

namespace {

using Json = nlohmann::ordered_json;

template <typename T>
void read_field(const Json& doc, const char* key, T& field) {
  if (!doc.contains(key)) return;
  try {
    field = doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("defaults: field '") + key + "' has the wrong type");
  }
}

}  // namespace

Defaults parse_defaults(std::string_view json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text.begin(), json_text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("defaults: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("defaults: top level must be an object");
  Defaults d;
  static const char* kKnown[] = {"gamma_scale", "free_measure_samples", "free_measure_seed",
                                 "eps_steer_fraction", "collision_resolution_fraction", "max_radius_fraction",
                                 "max_iterations", "failure_cap", "kp", "eps_pot_clearance_fraction",
                                 "eps_pot_fraction", "clearance_samples", "n_steps",
                                 "d_obs_fraction", "optimal_tolerance", "runs_per_cell", "cost_trace_stride"};
  for (const auto& [key, _] : doc.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown)) {
      throw ParseError("defaults: unknown field '" + key + "'");
    }
  }
  read_field(doc, "gamma_scale", d.gamma_scale);
  read_field(doc, "free_measure_samples", d.free_measure_samples);
  read_field(doc, "free_measure_seed", d.free_measure_seed);
  read_field(doc, "eps_steer_fraction", d.eps_steer_fraction);
  read_field(doc, "collision_resolution_fraction", d.collision_resolution_fraction);
  read_field(doc, "max_radius_fraction", d.max_radius_fraction);
  read_field(doc, "max_iterations", d.max_iterations);
  read_field(doc, "failure_cap", d.failure_cap);
  read_field(doc, "kp", d.kp);
  read_field(doc, "eps_pot_clearance_fraction", d.eps_pot_clearance_fraction);
  read_field(doc, "eps_pot_fraction", d.eps_pot_fraction);
  read_field(doc, "clearance_samples", d.clearance_samples);
  read_field(doc, "n_steps", d.n_steps);
  read_field(doc, "d_obs_fraction", d.d_obs_fraction);
  read_field(doc, "optimal_tolerance", d.optimal_tolerance);
  read_field(doc, "runs_per_cell", d.runs_per_cell);
  read_field(doc, "cost_trace_stride", d.cost_trace_stride);
  return d;
}

std::string serialize_defaults(const Defaults& d) {
  Json doc = {{"gamma_scale", d.gamma_scale},
              {"free_measure_samples", d.free_measure_samples},
              {"free_measure_seed", d.free_measure_seed},
              {"eps_steer_fraction", d.eps_steer_fraction},
              {"collision_resolution_fraction", d.collision_resolution_fraction},
              {"max_radius_fraction", d.max_radius_fraction},
              {"max_iterations", d.max_iterations},
              {"failure_cap", d.failure_cap},
              {"kp", d.kp},
              {"eps_pot_clearance_fraction", d.eps_pot_clearance_fraction},
              {"eps_pot_fraction", d.eps_pot_fraction},
              {"clearance_samples", d.clearance_samples},
              {"n_steps", d.n_steps},
              {"d_obs_fraction", d.d_obs_fraction},
              {"optimal_tolerance", d.optimal_tolerance},
              {"runs_per_cell", d.runs_per_cell},
              {"cost_trace_stride", d.cost_trace_stride}};
  return doc.dump(2) + "\n";
}

double auto_gamma(const Environment& env, const Defaults& defaults) {
  SeededRandomSource rng(defaults.free_measure_seed);
  const double mu = env.free_measure_estimate(defaults.free_measure_samples, rng);
  const double measure = mu > 0.0 ? mu : env.bounds().volume();
  return defaults.gamma_scale * std::pow(measure, 1.0 / static_cast<double>(env.dimension()));
}

double mean_clearance(const Environment& env, const Defaults& defaults) {
  if (env.obstacles().empty()) return std::numeric_limits<double>::infinity();
  SeededRandomSource rng(defaults.free_measure_seed);
  const std::size_t n = std::max<std::size_t>(defaults.clearance_samples, 1);
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) sum += env.nearest_obstacle_distance(env.sample_free(rng));
  return sum / static_cast<double>(n);
}

PlannerConfig default_config(const Environment& env, PlannerKind kind, const Defaults& defaults) {
  const double diag = env.bounds().diagonal();
  PlannerConfig cfg;
  cfg.kind = kind;
  cfg.gamma = auto_gamma(env, defaults);
  cfg.eps_steer = defaults.eps_steer_fraction * diag;
  cfg.collision_resolution = defaults.collision_resolution_fraction * diag;
  cfg.max_radius = defaults.max_radius_fraction * diag;
  cfg.max_iterations = defaults.max_iterations;
  cfg.potential.attractive_gain = defaults.kp;
  cfg.potential.step =
      std::min(defaults.eps_pot_clearance_fraction * mean_clearance(env, defaults), defaults.eps_pot_fraction * diag);
  cfg.potential.steps = defaults.n_steps;
  cfg.potential.obstacle_stop_distance = defaults.d_obs_fraction * diag;
  cfg.cost_trace_stride = defaults.cost_trace_stride;
  return cfg;
}

}  // namespace pgbrrt
