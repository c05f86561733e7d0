#pragma once

#include <string>
#include <string_view>

#include "pgbrrt/planners.hpp"

namespace pgbrrt {

std::string library_version();

/// Structured run document: every RunResult field, the config echo and the
/// library version. Infinite costs are written as null. Cost-trace samples
/// are those recorded by the run (improvements plus every
/// `cost_trace_stride` iterations).
std::string serialize_run(const RunResult& result, const PlannerConfig& config, std::string_view scenario_name);

struct StoredRun {
  RunResult result;
  PlannerConfig config;
  std::string scenario_name;
};

/// Inverse of serialize_run. Throws ParseError on malformed input.
StoredRun parse_run(std::string_view text);

std::string serialize_config(const PlannerConfig& config);
PlannerConfig parse_config(std::string_view text);

}  // namespace pgbrrt
