#include "pgbrrt/export.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "pgbrrt/errors.hpp"
#include "pgbrrt/file_io.hpp"
#include "pgbrrt/run_io.hpp"

namespace pgbrrt {
namespace {

using Json = nlohmann::ordered_json;

std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_number(*v) : "-"; }

double parse_number(const std::string& field, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError("csv line " + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

std::optional<double> parse_optional(const std::string& field, std::size_t line) {
  if (field == "-") return std::nullopt;
  return parse_number(field, line);
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<double> optional_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

Json row_json(const BenchRow& r) {
  return Json{{"scenario", r.scenario},       {"planner", r.planner},
              {"i_min", optional_json(r.i_min)}, {"i_max", optional_json(r.i_max)},
              {"i_avg", optional_json(r.i_avg)}, {"t_min", optional_json(r.t_min)},
              {"t_max", optional_json(r.t_max)}, {"t_avg", optional_json(r.t_avg)},
              {"theta_avg", optional_json(r.theta_avg)}, {"cost", r.reference_cost},
              {"fail_pct", r.fail_percent}};
}

}  // namespace

std::string rows_to_csv(std::span<const BenchRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += r.scenario + ',' + r.planner + ',' + format_optional(r.i_min) + ',' + format_optional(r.i_max) + ',' +
           format_optional(r.i_avg) + ',' + format_optional(r.t_min) + ',' + format_optional(r.t_max) + ',' +
           format_optional(r.t_avg) + ',' + format_optional(r.theta_avg) + ',' + format_number(r.reference_cost) +
           ',' + format_number(r.fail_percent) + '\n';
  }
  return out;
}

std::vector<BenchRow> rows_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ParseError("csv: missing or unexpected header");
  std::vector<BenchRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) f.push_back(field);
    if (f.size() != 11) throw ParseError("csv line " + std::to_string(line_no) + ": expected 11 fields");
    BenchRow r;
    r.scenario = f[0];
    r.planner = f[1];
    r.i_min = parse_optional(f[2], line_no);
    r.i_max = parse_optional(f[3], line_no);
    r.i_avg = parse_optional(f[4], line_no);
    r.t_min = parse_optional(f[5], line_no);
    r.t_max = parse_optional(f[6], line_no);
    r.t_avg = parse_optional(f[7], line_no);
    r.theta_avg = parse_optional(f[8], line_no);
    r.reference_cost = parse_number(f[9], line_no);
    r.fail_percent = parse_number(f[10], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string rows_to_json(std::span<const BenchRow> rows) {
  Json arr = Json::array();
  for (const auto& r : rows) arr.push_back(row_json(r));
  return arr.dump(2) + "\n";
}

std::vector<BenchRow> rows_from_json(std::string_view text) {
  try {
    const Json doc = Json::parse(text.begin(), text.end());
    const Json& arr = doc.is_object() ? doc.at("rows") : doc;
    std::vector<BenchRow> rows;
    for (const auto& j : arr) {
      BenchRow r;
      r.scenario = j.at("scenario").get<std::string>();
      r.planner = j.at("planner").get<std::string>();
      r.i_min = optional_from(j.at("i_min"));
      r.i_max = optional_from(j.at("i_max"));
      r.i_avg = optional_from(j.at("i_avg"));
      r.t_min = optional_from(j.at("t_min"));
      r.t_max = optional_from(j.at("t_max"));
      r.t_avg = optional_from(j.at("t_avg"));
      r.theta_avg = optional_from(j.at("theta_avg"));
      r.reference_cost = j.at("cost").get<double>();
      r.fail_percent = j.at("fail_pct").get<double>();
      rows.push_back(std::move(r));
    }
    return rows;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("rows json: ") + e.what());
  }
}

std::string campaign_to_json(const Campaign& campaign) {
  Json doc;
  doc["library_version"] = library_version();
  Json rows = Json::array();
  for (const auto& r : campaign.rows) rows.push_back(row_json(r));
  doc["rows"] = std::move(rows);
  Json runs = Json::array();
  for (const auto& run : campaign.runs) {
    const RunResult& r = run.result;
    runs.push_back(Json{
        {"scenario", run.scenario},
        {"planner", std::string(planner_name(run.planner))},
        {"run_index", run.run_index},
        {"seed", run.seed},
        {"failed", run.failed},
        {"target_iteration", r.target_iteration ? Json(*r.target_iteration) : Json(nullptr)},
        {"target_time", r.target_time ? Json(*r.target_time) : Json(nullptr)},
        {"first_solution_iteration", r.first_solution_iteration ? Json(*r.first_solution_iteration) : Json(nullptr)},
        {"best_cost", std::isfinite(r.best_cost) ? Json(r.best_cost) : Json(nullptr)},
        {"total_iterations", r.total_iterations},
        {"rewire_count", r.rewire_count},
        {"theta", r.theta},
        {"wall_time", r.wall_time}});
  }
  doc["runs"] = std::move(runs);
  return doc.dump(2) + "\n";
}

void export_results(const Campaign& campaign, ExportFormat format, const std::filesystem::path& path) {
  write_file_atomic(path, format == ExportFormat::Csv ? rows_to_csv(campaign.rows) : campaign_to_json(campaign));
}

}  // namespace pgbrrt
