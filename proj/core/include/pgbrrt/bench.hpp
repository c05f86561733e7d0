#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgbrrt/environment.hpp"
#include "pgbrrt/motion_tree.hpp"
#include "pgbrrt/planner_config.hpp"
#include "pgbrrt/planners.hpp"

namespace pgbrrt {

/// Per-planner tweaks applied on top of default_config().
struct PlannerOverrides {
  PlannerKind kind = PlannerKind::RRTStar;
  std::optional<double> gamma;
  std::optional<double> eps_steer;
  std::optional<double> kp;
  std::optional<double> eps_pot;
  std::optional<std::size_t> n_steps;
  std::optional<double> d_obs;
  std::optional<bool> bpg_pull_toward_active_root;

  PlannerConfig apply(PlannerConfig config) const;
};

struct BenchScenario {
  std::string name;
  std::string document;  // scenario JSON text
};

struct BenchSpec {
  std::vector<BenchScenario> scenarios;
  std::vector<PlannerOverrides> planners;
  std::size_t runs_per_cell = 50;
  std::uint64_t seed_base = 0;
  std::size_t failure_cap = 5'000'000;
  double optimal_tolerance = 0.05;
  Defaults defaults;

  void validate() const;
};

/// Spec document:
///   { "scenarios": ["relative/or/absolute.json" | {"name": "...", "path": "..."}],
///     "planners": ["pib-rrt-star" | {"planner": "...", "n_steps": 5, ...}],
///     "runs_per_cell": 50, "seed_base": 0, "failure_cap": 5000000,
///     "optimal_tolerance": 0.05 }
/// Relative scenario paths resolve against `base_dir`.
BenchSpec parse_bench_spec(std::string_view text, const std::filesystem::path& base_dir,
                           const Defaults& defaults = {});

/// One Table-1 row. Iteration/time/theta aggregates cover non-failed runs
/// only and are absent when every run failed.
struct BenchRow {
  std::string scenario;
  std::string planner;
  std::optional<double> i_min, i_max, i_avg;
  std::optional<double> t_min, t_max, t_avg;
  std::optional<double> theta_avg;
  double reference_cost = 0.0;
  double fail_percent = 0.0;

  friend bool operator==(const BenchRow&, const BenchRow&) = default;
};

struct CampaignRun {
  std::string scenario;
  PlannerKind planner = PlannerKind::RRTStar;
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  bool failed = true;
  RunResult result;
};

struct Campaign {
  std::vector<BenchRow> rows;
  std::vector<CampaignRun> runs;
};

/// Runs every (scenario, planner) cell. Run j of every cell uses seed
/// seed_base + j. A run fails when the cost never reaches
/// reference_cost * (1 + optimal_tolerance) within failure_cap iterations.
/// Cells are distributed over `jobs` threads; results do not depend on it.
Campaign run_campaign(const BenchSpec& spec, unsigned jobs = 1);

BenchRow aggregate_row(std::string scenario, std::string planner, double reference_cost,
                       std::span<const CampaignRun> runs);

/// Volume of the d-ball of radius r.
double ball_volume(std::size_t dimension, double radius);

/// Vertices inside the connection ball around z, per unit ball volume.
double near_vertex_intensity(const MotionTree& tree, const ConfigPoint& z, const RadiusPolicy& policy);

/// Mean |guided(z) - z| over `samples` free samples drawn from `seed`.
/// Sample k uses iteration parity k for the alternating-pole planners.
double mean_guided_displacement(const Environment& env, PlannerKind kind, const PotentialParams& params,
                                std::size_t samples, std::uint64_t seed);

struct SweepRow {
  std::size_t n_steps = 0;
  std::optional<double> median_first_iteration;
  std::size_t failures = 0;
  double mean_displacement = 0.0;
};

struct SweepOptions {
  std::size_t runs = 10;
  std::uint64_t seed_base = 0;
  std::size_t max_iterations = 200'000;
  std::size_t displacement_samples = 2'000;
};

/// For each n_steps value: median iterations to first solution over the
/// seeded runs, and mean guided-sample displacement over a fixed batch.
std::vector<SweepRow> sweep_n_steps(const Environment& env, const PlannerConfig& base,
                                    std::span<const std::size_t> values, const SweepOptions& options);

/// Median of the values; +infinity entries sort last.
double median(std::vector<double> values);

}  // namespace pgbrrt
