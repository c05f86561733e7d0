#include "cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pgbrrt/bench.hpp"
#include "pgbrrt/errors.hpp"
#include "pgbrrt/export.hpp"
#include "pgbrrt/file_io.hpp"
#include "pgbrrt/planner_config.hpp"
#include "pgbrrt/planners.hpp"
#include "pgbrrt/run_io.hpp"
#include "pgbrrt/scenario.hpp"
#include "pgbrrt/svg.hpp"

namespace pgbrrt::cli {
namespace {

namespace fs = std::filesystem;

constexpr const char* kDefaultsEnv = "PGBRRT_DEFAULTS";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Defaults load_defaults() {
  const char* path = std::getenv(kDefaultsEnv);
  if (path == nullptr || *path == '\0') return {};
  return parse_defaults(read_text_file(path));
}

template <typename T>
std::optional<T> if_set(const CLI::Option* opt, const T& value) {
  return opt->count() > 0 ? std::optional<T>(value) : std::nullopt;
}

std::array<std::size_t, 2> parse_projection(const std::string& text) {
  std::array<std::size_t, 2> axes{};
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--projection expects two axis indices, e.g. 0,1");
  const std::string parts[2] = {text.substr(0, comma), text.substr(comma + 1)};
  for (int i = 0; i < 2; ++i) {
    const auto& s = parts[i];
    const auto res = std::from_chars(s.data(), s.data() + s.size(), axes[i]);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      throw UsageError("--projection: bad axis '" + s + "'");
    }
  }
  return axes;
}

std::vector<std::size_t> parse_values(const std::string& text) {
  std::vector<std::size_t> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t v = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw UsageError("--values: bad entry '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("--values must list at least one count");
  return values;
}

ExportFormat parse_format(const std::string& text) {
  if (text == "csv") return ExportFormat::Csv;
  if (text == "json") return ExportFormat::Json;
  throw UsageError("--format must be csv or json");
}

/// Flags shared by `plan` and `sweep`.
struct PlannerFlags {
  std::string scenario;
  std::string planner;
  std::uint64_t seed = 0;
  std::size_t max_iters = 0;
  std::string gamma = "auto";
  double eps_steer = 0.0, kp = 0.0, eps_pot = 0.0, d_obs = 0.0, goal_radius = 0.0;
  std::size_t n_steps = 0;
  std::size_t trace_stride = 0;
  bool stop_on_first = false;
  bool pull_toward_active_root = false;

  CLI::Option *max_iters_opt = nullptr, *eps_steer_opt = nullptr, *kp_opt = nullptr, *eps_pot_opt = nullptr,
              *d_obs_opt = nullptr, *goal_radius_opt = nullptr, *n_steps_opt = nullptr, *trace_stride_opt = nullptr;

  void attach(CLI::App& app) {
    app.add_option("--scenario", scenario, "Scenario document")->required();
    app.add_option("--planner", planner, "rrt-star | p-rrt-star | b-rrt-star | ib-rrt-star | pb-rrt-star | pib-rrt-star")
        ->required();
    app.add_option("--seed", seed, "RNG seed");
    max_iters_opt = app.add_option("--max-iters", max_iters, "Iteration budget N");
    app.add_option("--gamma", gamma, "Near-radius constant, or 'auto'");
    eps_steer_opt = app.add_option("--eps-steer", eps_steer, "Extend step length");
    kp_opt = app.add_option("--kp", kp, "Attractive gain");
    eps_pot_opt = app.add_option("--eps-pot", eps_pot, "Potential descent step length");
    n_steps_opt = app.add_option("--n-steps", n_steps, "Potential descent step count");
    d_obs_opt = app.add_option("--d-obs", d_obs, "Obstacle stop distance");
    goal_radius_opt = app.add_option("--goal-radius", goal_radius, "Override the scenario goal radius");
    trace_stride_opt = app.add_option("--trace-stride", trace_stride, "Cost-trace sampling stride (0: improvements only)");
    app.add_flag("--stop-on-first", stop_on_first, "Stop at the first solution");
    app.add_flag("--pull-toward-active-root", pull_toward_active_root,
                 "Shift the alternating-pole parity by one iteration");
  }

  Environment environment() const {
    Environment env = load_scenario_file(scenario);
    if (goal_radius_opt->count() == 0) return env;
    Environment out(env.bounds(), env.obstacles(), env.start(), env.goal(), goal_radius);
    out.set_name(env.name());
    out.set_reference_cost(env.reference_cost());
    return out;
  }

  PlannerConfig config(const Environment& env, const Defaults& defaults) const {
    const auto kind = parse_planner_name(planner);
    if (!kind) throw UsageError("unknown planner '" + planner + "'");
    PlannerConfig cfg = default_config(env, *kind, defaults);
    cfg.seed = seed;
    if (gamma != "auto") {
      double g = 0.0;
      const auto res = std::from_chars(gamma.data(), gamma.data() + gamma.size(), g);
      if (res.ec != std::errc() || res.ptr != gamma.data() + gamma.size()) {
        throw UsageError("--gamma expects a number or 'auto'");
      }
      cfg.gamma = g;
    }
    if (auto v = if_set(max_iters_opt, max_iters)) cfg.max_iterations = *v;
    if (auto v = if_set(eps_steer_opt, eps_steer)) cfg.eps_steer = *v;
    if (auto v = if_set(kp_opt, kp)) cfg.potential.attractive_gain = *v;
    if (auto v = if_set(eps_pot_opt, eps_pot)) cfg.potential.step = *v;
    if (auto v = if_set(n_steps_opt, n_steps)) cfg.potential.steps = *v;
    if (auto v = if_set(d_obs_opt, d_obs)) cfg.potential.obstacle_stop_distance = *v;
    if (auto v = if_set(trace_stride_opt, trace_stride)) cfg.cost_trace_stride = *v;
    cfg.stop_on_first = stop_on_first;
    cfg.bpg_pull_toward_active_root = pull_toward_active_root;
    cfg.validate();
    cfg.potential.validate();
    return cfg;
  }
};

std::optional<std::array<std::size_t, 2>> projection_for(const Environment& env, const std::string& flag) {
  if (!flag.empty()) return parse_projection(flag);
  if (env.dimension() > 2) return std::array<std::size_t, 2>{0, 1};
  return std::nullopt;
}

std::string format_cost(double c) {
  if (!std::isfinite(c)) return "none";
  std::ostringstream s;
  s.precision(10);
  s << c;
  return s.str();
}

int cmd_plan(const PlannerFlags& flags, const std::string& out_path, const std::string& svg_path,
             const std::string& tree_dump, const std::string& goal_tree_dump, const std::string& projection,
             std::ostream& out) {
  const Defaults defaults = load_defaults();
  const Environment env = flags.environment();
  const PlannerConfig cfg = flags.config(env, defaults);
  SvgOptions svg_options;
  svg_options.projection = projection_for(env, projection);

  PlannerSession session(env, cfg);
  session.run();
  const RunResult result = session.result();
  const std::string doc = serialize_run(result, cfg, env.name());

  if (out_path.empty()) {
    out << doc;
  } else {
    write_file_atomic(out_path, doc);
  }
  if (!svg_path.empty()) {
    std::vector<TreeDrawing> trees{drawing_of(session.init_tree())};
    if (session.goal_tree()) trees.push_back(drawing_of(*session.goal_tree()));
    const Path* best = result.best_path ? &*result.best_path : nullptr;
    write_file_atomic(svg_path, render_svg(env, trees, best, svg_options));
  }
  if (!tree_dump.empty()) write_file_atomic(tree_dump, dump_tree(session.init_tree()));
  if (!goal_tree_dump.empty() && session.goal_tree()) {
    write_file_atomic(goal_tree_dump, dump_tree(*session.goal_tree()));
  }
  if (!out_path.empty()) {
    out << planner_name(cfg.kind) << " seed=" << cfg.seed << " iterations=" << result.total_iterations
        << " best_cost=" << format_cost(result.best_cost) << " failed=" << (result.failed ? "true" : "false")
        << "\n";
  }
  return result.failed ? kNoPath : kOk;
}

int cmd_bench(const std::string& spec_path, unsigned jobs, const std::string& format, const std::string& out_path,
              std::ostream& out) {
  const ExportFormat fmt = parse_format(format);
  const Defaults defaults = load_defaults();
  const BenchSpec spec = parse_bench_spec(read_text_file(spec_path), fs::path(spec_path).parent_path(), defaults);
  const Campaign campaign = run_campaign(spec, jobs);
  if (out_path.empty()) {
    out << (fmt == ExportFormat::Csv ? rows_to_csv(campaign.rows) : campaign_to_json(campaign));
  } else {
    export_results(campaign, fmt, out_path);
  }
  return kOk;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream s;
  s.precision(17);
  s << "n_steps,median_first_iteration,failures,mean_displacement\n";
  for (const auto& r : rows) {
    s << r.n_steps << ',';
    if (r.median_first_iteration) {
      s << *r.median_first_iteration;
    } else {
      s << '-';
    }
    s << ',' << r.failures << ',' << r.mean_displacement << '\n';
  }
  return s.str();
}

std::string sweep_json(const std::vector<SweepRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    arr.push_back({{"n_steps", r.n_steps},
                   {"median_first_iteration", r.median_first_iteration ? nlohmann::ordered_json(*r.median_first_iteration)
                                                                       : nlohmann::ordered_json(nullptr)},
                   {"failures", r.failures},
                   {"mean_displacement", r.mean_displacement}});
  }
  return arr.dump(2) + "\n";
}

int cmd_sweep(const PlannerFlags& flags, const std::string& values_text, std::size_t runs, const std::string& format,
              const std::string& out_path, std::ostream& out) {
  const ExportFormat fmt = parse_format(format);
  const std::vector<std::size_t> values = parse_values(values_text);
  const Defaults defaults = load_defaults();
  const Environment env = flags.environment();
  const PlannerConfig base = flags.config(env, defaults);
  if (!uses_potential(base.kind)) throw UsageError("sweep requires a potential-guided planner");
  if (runs == 0) throw UsageError("--runs must be >= 1");

  SweepOptions options;
  options.runs = runs;
  options.seed_base = base.seed;
  options.max_iterations = base.max_iterations;
  const auto rows = sweep_n_steps(env, base, values, options);
  const std::string doc = fmt == ExportFormat::Csv ? sweep_csv(rows) : sweep_json(rows);
  if (out_path.empty()) {
    out << doc;
  } else {
    write_file_atomic(out_path, doc);
  }
  return kOk;
}

int cmd_render(const std::string& scenario, const std::string& run_path, const std::vector<std::string>& dumps,
               const std::string& svg_path, const std::string& projection) {
  if (dumps.size() > 2) throw UsageError("--tree-dump accepts at most two trees");
  const Environment env = load_scenario_file(scenario);
  SvgOptions options;
  options.projection = projection_for(env, projection);

  std::optional<StoredRun> run;
  if (!run_path.empty()) run = parse_run(read_text_file(run_path));
  std::vector<TreeDrawing> trees;
  for (const auto& d : dumps) trees.push_back(drawing_of(parse_tree_dump(read_text_file(d))));
  for (const auto& t : trees) {
    for (const auto& p : t.points) {
      if (p.dimension() != env.dimension()) throw ValidationError("tree dump dimension does not match the scenario");
    }
  }
  const Path* best = run && run->result.best_path ? &*run->result.best_path : nullptr;
  if (best) {
    for (const auto& p : best->points) {
      if (p.dimension() != env.dimension()) throw ValidationError("run path dimension does not match the scenario");
    }
  }
  write_file_atomic(svg_path, render_svg(env, trees, best, options));
  return kOk;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Potentially guided bidirectional RRT* planners and benchmark harness", "pgbrrt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());

  PlannerFlags plan_flags;
  std::string plan_out, plan_svg, plan_tree_dump, plan_goal_tree_dump, plan_projection;
  auto* plan = app.add_subcommand("plan", "Run one seeded planner and write the run document");
  plan_flags.attach(*plan);
  plan->add_option("--out", plan_out, "Run document path (stdout when omitted)");
  plan->add_option("--svg", plan_svg, "Also render trees and path to this SVG file");
  plan->add_option("--tree-dump", plan_tree_dump, "Write the start-rooted tree dump here");
  plan->add_option("--goal-tree-dump", plan_goal_tree_dump, "Write the goal-rooted tree dump here");
  plan->add_option("--projection", plan_projection, "Axis pair for SVG projection, e.g. 0,2");

  std::string bench_spec, bench_format = "csv", bench_out;
  unsigned bench_jobs = std::max(1u, std::thread::hardware_concurrency());
  auto* bench = app.add_subcommand("bench", "Execute a benchmark campaign");
  bench->add_option("--spec", bench_spec, "Benchmark specification document")->required();
  bench->add_option("--jobs", bench_jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--format", bench_format, "csv | json");
  bench->add_option("--out", bench_out, "Output path (stdout when omitted)");

  PlannerFlags sweep_flags;
  std::string sweep_values = "0,5,10,50", sweep_format = "csv", sweep_out;
  std::size_t sweep_runs = 10;
  auto* sweep = app.add_subcommand("sweep", "Sweep the potential descent step count");
  sweep_flags.attach(*sweep);
  sweep->add_option("--values", sweep_values, "Comma-separated step counts");
  sweep->add_option("--runs", sweep_runs, "Seeded runs per value");
  sweep->add_option("--format", sweep_format, "csv | json");
  sweep->add_option("--out", sweep_out, "Output path (stdout when omitted)");

  std::string render_scenario, render_run, render_svg_path, render_projection;
  std::vector<std::string> render_dumps;
  auto* render = app.add_subcommand("render", "Render a stored run and tree dumps to SVG");
  render->add_option("--scenario", render_scenario, "Scenario document")->required();
  render->add_option("--run", render_run, "Run document from `plan`");
  render->add_option("--tree-dump", render_dumps, "Tree dump file (repeatable, at most two)");
  render->add_option("--svg", render_svg_path, "Output SVG path")->required();
  render->add_option("--projection", render_projection, "Axis pair for projection, e.g. 0,2");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << library_version() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "pgbrrt: " << one_line(e.what()) << "\n";
    return kUsage;
  }

  try {
    if (plan->parsed()) {
      return cmd_plan(plan_flags, plan_out, plan_svg, plan_tree_dump, plan_goal_tree_dump, plan_projection, out);
    }
    if (bench->parsed()) return cmd_bench(bench_spec, bench_jobs, bench_format, bench_out, out);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_values, sweep_runs, sweep_format, sweep_out, out);
    return cmd_render(render_scenario, render_run, render_dumps, render_svg_path, render_projection);
  } catch (const std::exception& e) {
    err << "pgbrrt: " << one_line(e.what()) << "\n";
    return kUsage;
  }
}

}  // namespace pgbrrt::cli
