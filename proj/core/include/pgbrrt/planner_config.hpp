#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "pgbrrt/environment.hpp"
#include "pgbrrt/potential.hpp"

namespace pgbrrt {

enum class PlannerKind { RRTStar, PRRTStar, BRRTStar, IBRRTStar, PBRRTStar, PIBRRTStar };

inline constexpr PlannerKind kAllPlannerKinds[] = {PlannerKind::RRTStar,   PlannerKind::PRRTStar,
                                                   PlannerKind::BRRTStar,  PlannerKind::IBRRTStar,
                                                   PlannerKind::PBRRTStar, PlannerKind::PIBRRTStar};

/// Kebab-case CLI name, e.g. "pib-rrt-star".
std::string_view planner_name(PlannerKind kind);
std::optional<PlannerKind> parse_planner_name(std::string_view name);

bool uses_potential(PlannerKind kind);
bool is_bidirectional(PlannerKind kind);

struct PlannerConfig {
  PlannerKind kind = PlannerKind::RRTStar;
  double gamma = 1.0;
  double eps_steer = 1.0;
  double collision_resolution = 1e-3;
  /// Radius returned while a tree holds a single vertex.
  double max_radius = 1.0;
  /// <= 0 selects the natural log in the near radius.
  double log_base = 0.0;
  std::size_t max_iterations = 1;
  std::uint64_t seed = 0;
  PotentialParams potential;
  bool stop_on_first = false;
  /// Stop once the best cost is <= this value.
  std::optional<double> target_cost;
  /// Record a cost-trace sample every `cost_trace_stride` iterations (0: only on improvement).
  std::size_t cost_trace_stride = 0;
  /// Shift the alternating-pole parity by one, so each bidirectional tree is
  /// fed samples pulled toward its own root instead of the opposite root.
  bool bpg_pull_toward_active_root = false;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Every numeric default in one place. Loaded from JSON to override.
struct Defaults {
  double gamma_scale = 2.0;                   // gamma = scale * mu(Z_free)^(1/d)
  std::size_t free_measure_samples = 100'000; // Monte-Carlo samples for mu(Z_free)
  std::uint64_t free_measure_seed = 20'170'406;
  double eps_steer_fraction = 0.05;           // of the bounds diagonal
  double collision_resolution_fraction = 1e-3;
  double max_radius_fraction = 1.0;
  std::size_t max_iterations = 200'000;
  std::size_t failure_cap = 5'000'000;
  double kp = 1.0;
  double eps_pot_clearance_fraction = 0.1;    // of the mean free-space clearance
  double eps_pot_fraction = 0.01;             // of the bounds diagonal; upper limit
  std::size_t clearance_samples = 10'000;
  std::size_t n_steps = 10;
  double d_obs_fraction = 5e-4;
  double optimal_tolerance = 0.05;
  std::size_t runs_per_cell = 50;
  std::size_t cost_trace_stride = 0;
};

Defaults parse_defaults(std::string_view json_text);
std::string serialize_defaults(const Defaults& defaults);

/// mu(Z_free) estimate used for the automatic gamma; deterministic for a
/// given environment and defaults table.
double auto_gamma(const Environment& env, const Defaults& defaults = {});

/// Mean nearest-obstacle distance over free samples; +infinity without
/// obstacles. Deterministic for a given environment and defaults table.
double mean_clearance(const Environment& env, const Defaults& defaults = {});

/// Fully resolved configuration for `kind` on `env`.
PlannerConfig default_config(const Environment& env, PlannerKind kind, const Defaults& defaults = {});

}  // namespace pgbrrt
