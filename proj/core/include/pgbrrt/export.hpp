#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pgbrrt/bench.hpp"

namespace pgbrrt {

/// Table-1 column order.
inline constexpr std::string_view kCsvHeader =
    "scenario,planner,i_min,i_max,i_avg,t_min,t_max,t_avg,theta_avg,cost,fail_pct";

/// Missing aggregates are written as "-". Numbers use shortest round-trip
/// formatting, so rows_from_csv(rows_to_csv(r)) == r.
std::string rows_to_csv(std::span<const BenchRow> rows);
std::vector<BenchRow> rows_from_csv(std::string_view text);

std::string rows_to_json(std::span<const BenchRow> rows);
std::vector<BenchRow> rows_from_json(std::string_view text);

/// Rows plus one summary object per run (iteration fields, no paths).
std::string campaign_to_json(const Campaign& campaign);

enum class ExportFormat { Csv, Json };

/// Writes rows (CSV) or the campaign document (JSON) atomically.
void export_results(const Campaign& campaign, ExportFormat format, const std::filesystem::path& path);

}  // namespace pgbrrt
