#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pgbrrt/environment.hpp"
#include "pgbrrt/motion_tree.hpp"

namespace pgbrrt {

/// Tree geometry as rendered: vertices and the parent index of each
/// (negative for the root).
struct TreeDrawing {
  std::vector<ConfigPoint> points;
  std::vector<long long> parents;
};

TreeDrawing drawing_of(const MotionTree& tree);
TreeDrawing drawing_of(const TreeDump& dump);

struct SvgOptions {
  double width_px = 800.0;
  /// Axis pair for the orthographic projection. Required to be set
  /// explicitly for d > 2.
  std::optional<std::array<std::size_t, 2>> projection;
};

/// SVG 1.1 document: bounds, obstacles, up to two trees (distinct strokes,
/// one <circle class="vertex"> per vertex), start/goal markers and the best
/// path. Output is a pure function of the input.
std::string render_svg(const Environment& env, std::span<const TreeDrawing> trees, const Path* best_path,
                       const SvgOptions& options = {});

}  // namespace pgbrrt
