#include <doctest.h>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgbrrt/errors.hpp"
#include "pgbrrt/export.hpp"
#include "pgbrrt/file_io.hpp"
#include "pgbrrt/planner_config.hpp"
#include "pgbrrt/run_io.hpp"
#include "pgbrrt/scenario.hpp"
#include "pgbrrt/svg.hpp"

using namespace pgbrrt;
namespace fs = std::filesystem;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + needle.size())) ++n;
  return n;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "pgbrrt_io_test";
  fs::create_directories(dir);
  return dir;
}

std::vector<BenchRow> sample_rows() {
  BenchRow a{"cluttered2d", "pib-rrt-star", 12.0, 900.0, 1.0 / 3.0, 0.001, 0.5, 0.1234567890123, 1.25, 25.9, 0.0};
  BenchRow b;
  b.scenario = "enclosed2d";
  b.planner = "rrt-star";
  b.reference_cost = 9.546;
  b.fail_percent = 100.0;
  return {a, b};
}

}  // namespace

TEST_CASE("scenario round trip") {
  for (const char* name : {"open2d", "cluttered2d", "corridor2d", "enclosed2d", "cluttered3d"}) {
    CAPTURE(name);
    const Environment env = load_scenario_file(fs::path(PGBRRT_SCENARIO_DIR) / (std::string(name) + ".json"));
    const std::string text = serialize_scenario(env);
    const Environment again = load_scenario(text);
    CHECK(serialize_scenario(again) == text);
    CHECK(again.obstacles().size() == env.obstacles().size());
    CHECK(again.start() == env.start());
    CHECK(again.reference_cost() == env.reference_cost());
  }
}

TEST_CASE("scenario errors") {
  const char* inside = R"({"dimension": 2, "bounds": {"min": [0, 0], "max": [4, 4]},
    "obstacles": [{"type": "box", "min": [0, 0], "max": [1, 1]}], "start": [0.5, 0.5], "goal": [3, 3]})";
  try {
    (void)load_scenario(inside);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("start") != std::string::npos);
  }

  const char* mixed = R"({"dimension": 3, "bounds": {"min": [0, 0, 0], "max": [4, 4, 4]},
    "obstacles": [{"type": "sphere", "center": [2, 2], "radius": 0.5}], "start": [0.5, 0.5, 0.5], "goal": [3, 3, 3]})";
  try {
    (void)load_scenario(mixed);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("dimension mismatch") != std::string::npos);
  }

  CHECK_THROWS_AS(load_scenario("{\"dimension\": 2,"), ParseError);
  CHECK_THROWS_AS(load_scenario(R"({"dimension": 2})"), ParseError);
  CHECK_THROWS_AS(load_scenario_file("/nonexistent/scenario.json"), IoError);
}

TEST_CASE("run document round trip") {
  const Environment env = load_scenario_file(PGBRRT_SCENARIO_DIR "/corridor2d.json");
  PlannerConfig cfg = default_config(env, PlannerKind::PIBRRTStar);
  cfg.max_iterations = 2000;
  cfg.cost_trace_stride = 100;
  const RunResult r = run_planner(env, cfg);
  const std::string doc = serialize_run(r, cfg, "corridor2d");
  const StoredRun back = parse_run(doc);
  CHECK(back.scenario_name == "corridor2d");
  CHECK(back.result.best_cost == r.best_cost);
  CHECK(back.result.rewire_count == r.rewire_count);
  CHECK(back.result.cost_trace.size() == r.cost_trace.size());
  CHECK(back.config.seed == cfg.seed);
  CHECK(back.config.potential.steps == cfg.potential.steps);
  CHECK(serialize_run(back.result, back.config, back.scenario_name) == doc);
  CHECK(doc.find(library_version()) != std::string::npos);
  CHECK_THROWS_AS(parse_run("[]"), ParseError);
}

TEST_CASE("defaults table round trip") {
  Defaults d;
  d.n_steps = 7;
  d.kp = 2.5;
  const Defaults back = parse_defaults(serialize_defaults(d));
  CHECK(back.n_steps == 7);
  CHECK(back.kp == 2.5);
  CHECK(back.eps_pot_clearance_fraction == d.eps_pot_clearance_fraction);
  CHECK_THROWS(parse_defaults(R"({"no_such_key": 1})"));
}

TEST_CASE("CSV and JSON export") {
  CHECK(rows_to_csv({}) == std::string(kCsvHeader) + "\n");
  CHECK(kCsvHeader == "scenario,planner,i_min,i_max,i_avg,t_min,t_max,t_avg,theta_avg,cost,fail_pct");

  const std::vector<BenchRow> rows = sample_rows();
  CHECK(rows_from_csv(rows_to_csv(rows)) == rows);
  CHECK(rows_from_json(rows_to_json(rows)) == rows);

  Campaign c;
  c.rows = rows;
  const fs::path csv = scratch_dir() / "rows.csv";
  export_results(c, ExportFormat::Csv, csv);
  CHECK(rows_from_csv(read_text_file(csv)) == rows);
  const fs::path json = scratch_dir() / "campaign.json";
  export_results(c, ExportFormat::Json, json);
  CHECK(rows_from_json(read_text_file(json)) == rows);

  try {
    export_results(c, ExportFormat::Csv, "/nonexistent/dir/rows.csv");
    FAIL("expected an I/O error");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/rows.csv") != std::string::npos);
  }
}

TEST_CASE("SVG rendering") {
  const Environment env = load_scenario_file(PGBRRT_SCENARIO_DIR "/cluttered2d.json");
  const std::string empty = render_svg(env, {}, nullptr);
  CHECK(count(empty, "class=\"vertex\"") == 0);
  CHECK(count(empty, "class=\"obstacle\"") == env.obstacles().size());

  PlannerConfig cfg = default_config(env, PlannerKind::IBRRTStar);
  cfg.max_iterations = 3000;
  PlannerSession session(env, cfg);
  session.run();
  const RunResult r = session.result();
  const std::vector<TreeDrawing> trees{drawing_of(session.init_tree()), drawing_of(*session.goal_tree())};
  const Path* path = r.best_path ? &*r.best_path : nullptr;
  const std::string a = render_svg(env, trees, path);
  const std::string b = render_svg(env, trees, path);
  CHECK(a == b);
  CHECK(count(a, "class=\"vertex\"") == session.init_tree().size() + session.goal_tree()->size());
  CHECK(count(a, "class=\"edge\"") == session.init_tree().size() + session.goal_tree()->size() - 2);
  CHECK(a.rfind("<svg", 0) == std::string::npos);  // XML declaration comes first
  CHECK(a.find("<svg") != std::string::npos);

  const TreeDrawing from_dump = drawing_of(parse_tree_dump(dump_tree(session.init_tree())));
  CHECK(from_dump.parents == trees[0].parents);
}

TEST_CASE("SVG projection of 3-D scenarios") {
  const Environment env = load_scenario_file(PGBRRT_SCENARIO_DIR "/cluttered3d.json");
  CHECK_THROWS_AS(render_svg(env, {}, nullptr), std::invalid_argument);
  SvgOptions options;
  options.projection = std::array<std::size_t, 2>{0, 2};
  CHECK(render_svg(env, {}, nullptr, options).find("</svg>") != std::string::npos);
  options.projection = std::array<std::size_t, 2>{1, 1};
  CHECK_THROWS_AS(render_svg(env, {}, nullptr, options), std::invalid_argument);
}

TEST_CASE("atomic writes replace the whole file") {
  const fs::path p = scratch_dir() / "atomic.txt";
  write_file_atomic(p, "first version, longer");
  write_file_atomic(p, "second");
  CHECK(read_text_file(p) == "second");
  for (const auto& entry : fs::directory_iterator(scratch_dir())) {
    CHECK(entry.path().filename().string().find(".tmp") == std::string::npos);
  }
}
