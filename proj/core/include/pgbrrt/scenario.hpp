#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "pgbrrt/environment.hpp"

namespace pgbrrt {

inline constexpr double kDefaultGoalRadius = 0.5;

/// Parses a scenario document:
///
///   { "name": "...",                       (optional)
///     "dimension": 2,
///     "bounds": {"min": [..], "max": [..]},
///     "obstacles": [{"type": "box", "min": [..], "max": [..]},
///                   {"type": "sphere", "center": [..], "radius": r}],
///     "start": [..], "goal": [..],
///     "goal_radius": 0.5,                  (optional, default 0.5)
///     "reference_cost": 123.4 }            (optional)
///
/// Throws ParseError for malformed documents and ValidationError when an
/// Environment invariant fails (including any dimension mismatch).
Environment load_scenario(std::string_view text);
Environment load_scenario_file(const std::filesystem::path& path);

/// Canonical rendering: fixed key order, two-space indent, shortest
/// round-trip number formatting. load_scenario(serialize_scenario(e))
/// reproduces e exactly.
std::string serialize_scenario(const Environment& env);

}  // namespace pgbrrt
