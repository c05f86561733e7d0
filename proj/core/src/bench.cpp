#include "pgbrrt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "pgbrrt/errors.hpp"
#include "pgbrrt/file_io.hpp"
#include "pgbrrt/potential.hpp"
#include "pgbrrt/scenario.hpp"

namespace pgbrrt {

PlannerConfig PlannerOverrides::apply(PlannerConfig config) const {
  config.kind = kind;
  if (gamma) config.gamma = *gamma;
  if (eps_steer) config.eps_steer = *eps_steer;
  if (kp) config.potential.attractive_gain = *kp;
  if (eps_pot) config.potential.step = *eps_pot;
  if (n_steps) config.potential.steps = *n_steps;
  if (d_obs) config.potential.obstacle_stop_distance = *d_obs;
  if (bpg_pull_toward_active_root) config.bpg_pull_toward_active_root = *bpg_pull_toward_active_root;
  return config;
}

void BenchSpec::validate() const {
  if (runs_per_cell < 1) throw std::invalid_argument("bench: runs_per_cell must be >= 1");
  if (failure_cap < 1) throw std::invalid_argument("bench: failure_cap must be >= 1");
  if (!(optimal_tolerance >= 0.0)) throw std::invalid_argument("bench: optimal_tolerance must be >= 0");
  if (scenarios.empty()) throw std::invalid_argument("bench: no scenarios");
  if (planners.empty()) throw std::invalid_argument("bench: no planners");
}

namespace {

using Json = nlohmann::json;

PlannerOverrides overrides_from(const Json& j) {
  PlannerOverrides o;
  const std::string name = j.is_string() ? j.get<std::string>() : j.at("planner").get<std::string>();
  const auto kind = parse_planner_name(name);
  if (!kind) throw ParseError("bench spec: unknown planner '" + name + "'");
  o.kind = *kind;
  if (j.is_object()) {
    if (j.contains("gamma")) o.gamma = j.at("gamma").get<double>();
    if (j.contains("eps_steer")) o.eps_steer = j.at("eps_steer").get<double>();
    if (j.contains("kp")) o.kp = j.at("kp").get<double>();
    if (j.contains("eps_pot")) o.eps_pot = j.at("eps_pot").get<double>();
    if (j.contains("n_steps")) o.n_steps = j.at("n_steps").get<std::size_t>();
    if (j.contains("d_obs")) o.d_obs = j.at("d_obs").get<double>();
    if (j.contains("bpg_pull_toward_active_root")) {
      o.bpg_pull_toward_active_root = j.at("bpg_pull_toward_active_root").get<bool>();
    }
  }
  return o;
}

}  // namespace

BenchSpec parse_bench_spec(std::string_view text, const std::filesystem::path& base_dir, const Defaults& defaults) {
  BenchSpec spec;
  spec.defaults = defaults;
  spec.runs_per_cell = defaults.runs_per_cell;
  spec.failure_cap = defaults.failure_cap;
  spec.optimal_tolerance = defaults.optimal_tolerance;
  try {
    const Json doc = Json::parse(text.begin(), text.end());
    for (const auto& s : doc.at("scenarios")) {
      std::filesystem::path path = s.is_string() ? s.get<std::string>() : s.at("path").get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      std::string name = s.is_object() && s.contains("name") ? s.at("name").get<std::string>() : path.stem().string();
      spec.scenarios.push_back({std::move(name), read_text_file(path)});
    }
    for (const auto& p : doc.at("planners")) spec.planners.push_back(overrides_from(p));
    if (doc.contains("runs_per_cell")) spec.runs_per_cell = doc.at("runs_per_cell").get<std::size_t>();
    if (doc.contains("seed_base")) spec.seed_base = doc.at("seed_base").get<std::uint64_t>();
    if (doc.contains("failure_cap")) spec.failure_cap = doc.at("failure_cap").get<std::size_t>();
    if (doc.contains("optimal_tolerance")) spec.optimal_tolerance = doc.at("optimal_tolerance").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bench spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

BenchRow aggregate_row(std::string scenario, std::string planner, double reference_cost,
                       std::span<const CampaignRun> runs) {
  BenchRow row;
  row.scenario = std::move(scenario);
  row.planner = std::move(planner);
  row.reference_cost = reference_cost;
  std::vector<double> iters;
  std::vector<double> times;
  std::vector<double> thetas;
  std::size_t failures = 0;
  for (const auto& run : runs) {
    if (run.failed) {
      ++failures;
      continue;
    }
    iters.push_back(static_cast<double>(*run.result.target_iteration));
    times.push_back(*run.result.target_time);
    thetas.push_back(run.result.theta);
  }
  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  if (!iters.empty()) {
    row.i_min = *std::min_element(iters.begin(), iters.end());
    row.i_max = *std::max_element(iters.begin(), iters.end());
    row.i_avg = std::clamp(mean(iters), *row.i_min, *row.i_max);
    row.t_min = *std::min_element(times.begin(), times.end());
    row.t_max = *std::max_element(times.begin(), times.end());
    row.t_avg = std::clamp(mean(times), *row.t_min, *row.t_max);
    row.theta_avg = mean(thetas);
  }
  row.fail_percent = runs.empty() ? 0.0 : 100.0 * static_cast<double>(failures) / static_cast<double>(runs.size());
  return row;
}

Campaign run_campaign(const BenchSpec& spec, unsigned jobs) {
  spec.validate();
  std::vector<Environment> envs;
  for (const auto& s : spec.scenarios) {
    try {
      envs.push_back(load_scenario(s.document));
    } catch (const std::exception& e) {
      throw ValidationError("scenario '" + s.name + "': " + e.what());
    }
    if (!envs.back().reference_cost()) {
      throw ValidationError("scenario '" + s.name + "': reference_cost is required for a campaign");
    }
  }

  // Planner configs are resolved once per cell; gamma estimation is costly.
  std::vector<PlannerConfig> cell_configs;
  for (std::size_t si = 0; si < envs.size(); ++si) {
    for (const auto& p : spec.planners) {
      PlannerConfig cfg = p.apply(default_config(envs[si], p.kind, spec.defaults));
      cfg.max_iterations = spec.failure_cap;
      cfg.target_cost = *envs[si].reference_cost() * (1.0 + spec.optimal_tolerance);
      cfg.validate();
      cell_configs.push_back(cfg);
    }
  }

  const std::size_t cells = cell_configs.size();
  const std::size_t total = cells * spec.runs_per_cell;
  Campaign campaign;
  campaign.runs.resize(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> errored{false};

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total || errored.load()) return;
      const std::size_t cell = task / spec.runs_per_cell;
      const std::size_t run_index = task % spec.runs_per_cell;
      const std::size_t si = cell / spec.planners.size();
      try {
        PlannerConfig cfg = cell_configs[cell];
        cfg.seed = spec.seed_base + run_index;
        CampaignRun& out = campaign.runs[task];
        out.scenario = spec.scenarios[si].name;
        out.planner = cfg.kind;
        out.run_index = run_index;
        out.seed = cfg.seed;
        out.result = run_planner(envs[si], cfg);
        out.failed = !out.result.target_iteration.has_value();
      } catch (...) {
        if (!errored.exchange(true)) first_error = std::current_exception();
        return;
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(total)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t si = cell / spec.planners.size();
    const std::span<const CampaignRun> runs(campaign.runs.data() + cell * spec.runs_per_cell, spec.runs_per_cell);
    campaign.rows.push_back(aggregate_row(spec.scenarios[si].name,
                                          std::string(planner_name(cell_configs[cell].kind)),
                                          *envs[si].reference_cost(), runs));
  }
  return campaign;
}

double ball_volume(std::size_t dimension, double radius) {
  const double d = static_cast<double>(dimension);
  return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0) * std::pow(radius, d);
}

double near_vertex_intensity(const MotionTree& tree, const ConfigPoint& z, const RadiusPolicy& policy) {
  const double r = near_radius(tree.size(), policy);
  const auto near = tree.within(z, r);
  if (near.empty()) return 0.0;
  return static_cast<double>(near.size()) / ball_volume(tree.dimension(), r);
}

double mean_guided_displacement(const Environment& env, PlannerKind kind, const PotentialParams& params,
                                std::size_t samples, std::uint64_t seed) {
  if (samples == 0) return 0.0;
  SeededRandomSource rng(seed);
  double total = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const ConfigPoint z = env.sample_free(rng);
    ConfigPoint guided = z;
    if (kind == PlannerKind::PRRTStar) {
      guided = rgd(z, env.goal(), params, env);
    } else if (kind == PlannerKind::PBRRTStar || kind == PlannerKind::PIBRRTStar) {
      guided = bpg(z, k, env.start(), env.goal(), params, env);
    }
    total += distance(z, guided);
  }
  return total / static_cast<double>(samples);
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  const double lo = values[n / 2 - 1];
  const double hi = values[n / 2];
  if (std::isinf(lo) || std::isinf(hi)) return std::isinf(lo) ? lo : hi;
  return 0.5 * (lo + hi);
}

std::vector<SweepRow> sweep_n_steps(const Environment& env, const PlannerConfig& base,
                                    std::span<const std::size_t> values, const SweepOptions& options) {
  if (!uses_potential(base.kind)) throw std::invalid_argument("sweep_n_steps: planner does not use guidance");
  std::vector<SweepRow> rows;
  for (std::size_t n : values) {
    SweepRow row;
    row.n_steps = n;
    PlannerConfig cfg = base;
    cfg.potential.steps = n;
    cfg.stop_on_first = true;
    cfg.max_iterations = options.max_iterations;
    std::vector<double> firsts;
    for (std::size_t r = 0; r < options.runs; ++r) {
      cfg.seed = options.seed_base + r;
      const RunResult result = run_planner(env, cfg);
      if (result.first_solution_iteration) {
        firsts.push_back(static_cast<double>(*result.first_solution_iteration));
      } else {
        firsts.push_back(std::numeric_limits<double>::infinity());
        ++row.failures;
      }
    }
    const double med = median(firsts);
    if (std::isfinite(med)) row.median_first_iteration = med;
    row.mean_displacement =
        mean_guided_displacement(env, base.kind, cfg.potential, options.displacement_samples, options.seed_base);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace pgbrrt
