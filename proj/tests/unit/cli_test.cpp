#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "pgbrrt/file_io.hpp"
#include "pgbrrt/run_io.hpp"

using namespace pgbrrt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "pgbrrt_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string scenario(const char* name) { return std::string(PGBRRT_SCENARIO_DIR) + "/" + name; }

nlohmann::json without_wall_time(const std::string& text) {
  nlohmann::json doc = nlohmann::json::parse(text);
  for (const char* key : {"wall_time", "first_solution_time", "target_time"}) doc.erase(key);
  for (auto& s : doc["cost_trace"]) s.erase("elapsed");
  return doc;
}

}  // namespace

TEST_CASE("plan writes a valid run document") {
  const fs::path out = scratch("run.json");
  const Outcome o = run({"plan", "--scenario", scenario("open2d.json"), "--planner", "pib-rrt-star", "--seed", "7",
                         "--max-iters", "50000", "--out", out.string()});
  CHECK(o.code == cli::kOk);
  const StoredRun stored = parse_run(read_text_file(out));
  CHECK_FALSE(stored.result.failed);
  CHECK(stored.config.seed == 7);
  CHECK(stored.result.total_iterations == 50000);
}

TEST_CASE("plan on an enclosed goal exits 1 and still writes the document") {
  const fs::path out = scratch("enclosed.json");
  const Outcome o = run({"plan", "--scenario", scenario("enclosed2d.json"), "--planner", "rrt-star", "--max-iters",
                         "500", "--out", out.string()});
  CHECK(o.code == cli::kNoPath);
  CHECK(parse_run(read_text_file(out)).result.failed);
}

TEST_CASE("repeated invocations are identical apart from wall time") {
  for (const char* planner : {"rrt-star", "pb-rrt-star", "pib-rrt-star"}) {
    CAPTURE(planner);
    const std::vector<std::string> args{"plan", "--scenario", scenario("cluttered2d.json"), "--planner", planner,
                                        "--seed", "3", "--max-iters", "3000", "--trace-stride", "100"};
    const Outcome a = run(args);
    const Outcome b = run(args);
    REQUIRE(a.code == cli::kOk);
    CHECK(without_wall_time(a.out) == without_wall_time(b.out));
  }
}

TEST_CASE("usage errors exit 2 with one diagnostic line") {
  const std::vector<std::vector<std::string>> bad{
      {},
      {"plan", "--scenario", scenario("open2d.json"), "--planner", "nope"},
      {"plan", "--scenario", "/nonexistent.json", "--planner", "rrt-star"},
      {"plan", "--scenario", scenario("open2d.json"), "--planner", "rrt-star", "--bogus"},
      {"plan", "--scenario", scenario("open2d.json"), "--planner", "rrt-star", "--gamma", "fast"},
      {"plan", "--scenario", scenario("open2d.json"), "--planner", "rrt-star", "--eps-steer", "-1"},
      {"bench", "--spec", "/nonexistent.json"},
      {"sweep", "--scenario", scenario("open2d.json"), "--planner", "pib-rrt-star", "--values", "1,x"},
      {"render", "--scenario", scenario("cluttered3d.json"), "--svg", scratch("x.svg").string(), "--projection",
       "0"},
  };
  for (const auto& args : bad) {
    const Outcome o = run(args);
    CAPTURE(o.err);
    CHECK(o.code == cli::kUsage);
    CHECK(o.err.rfind("pgbrrt: ", 0) == 0);
    CHECK(o.err.find('\n') == o.err.size() - 1);
  }
}

TEST_CASE("failed writes leave no partial output") {
  const Outcome o = run({"plan", "--scenario", scenario("open2d.json"), "--planner", "rrt-star", "--max-iters", "10",
                         "--out", "/nonexistent/dir/run.json"});
  CHECK(o.code == cli::kUsage);
  CHECK_FALSE(fs::exists("/nonexistent/dir/run.json"));
}

TEST_CASE("plan, dump and render") {
  const fs::path run_doc = scratch("render_run.json");
  const fs::path dump_a = scratch("init.tree");
  const fs::path dump_b = scratch("goal.tree");
  const fs::path direct = scratch("direct.svg");
  const fs::path rendered = scratch("rendered.svg");
  REQUIRE(run({"plan", "--scenario", scenario("corridor2d.json"), "--planner", "ib-rrt-star", "--max-iters", "2000",
               "--out", run_doc.string(), "--svg", direct.string(), "--tree-dump", dump_a.string(),
               "--goal-tree-dump", dump_b.string()})
              .code == cli::kOk);
  REQUIRE(run({"render", "--scenario", scenario("corridor2d.json"), "--run", run_doc.string(), "--tree-dump",
               dump_a.string(), "--tree-dump", dump_b.string(), "--svg", rendered.string()})
              .code == cli::kOk);
  CHECK(read_text_file(direct) == read_text_file(rendered));

  const fs::path svg3 = scratch("cluttered3d.svg");
  CHECK(run({"plan", "--scenario", scenario("cluttered3d.json"), "--planner", "rrt-star", "--max-iters", "300",
             "--out", scratch("run3.json").string(), "--svg", svg3.string()})
            .code != cli::kUsage);
  CHECK(fs::exists(svg3));
}

TEST_CASE("bench and sweep") {
  const fs::path spec = scratch("spec.json");
  write_file_atomic(spec, R"({"scenarios": [")" + scenario("open2d.json") +
                              R"("], "planners": ["rrt-star", {"planner": "pib-rrt-star", "n_steps": 5}],
                              "runs_per_cell": 2, "failure_cap": 5000})");
  const Outcome csv = run({"bench", "--spec", spec.string(), "--jobs", "1"});
  REQUIRE(csv.code == cli::kOk);
  CHECK(csv.out.rfind("scenario,planner,i_min,i_max,i_avg,t_min,t_max,t_avg,theta_avg,cost,fail_pct\n", 0) == 0);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 3);

  const Outcome json = run({"bench", "--spec", spec.string(), "--format", "json"});
  REQUIRE(json.code == cli::kOk);
  CHECK(nlohmann::json::parse(json.out)["rows"].size() == 2);

  const Outcome sweep = run({"sweep", "--scenario", scenario("open2d.json"), "--planner", "pib-rrt-star", "--values",
                             "0,5", "--runs", "2", "--max-iters", "5000"});
  REQUIRE(sweep.code == cli::kOk);
  CHECK(sweep.out.rfind("n_steps,median_first_iteration,failures,mean_displacement\n0,", 0) == 0);
}

TEST_CASE("help and version exit 0") {
  CHECK(run({"--help"}).code == cli::kOk);
  const Outcome v = run({"--version"});
  CHECK(v.code == cli::kOk);
  CHECK(v.out == library_version() + "\n");
}
