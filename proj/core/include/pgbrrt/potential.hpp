#pragma once

#include <cstddef>

#include "pgbrrt/environment.hpp"
#include "pgbrrt/point.hpp"

namespace pgbrrt {

/// Attractive-field descent parameters.
struct PotentialParams {
  double attractive_gain = 1.0;         // k_p
  double step = 0.1;                    // descent step length
  std::size_t steps = 10;               // descent iteration bound ("k")
  double obstacle_stop_distance = 1e-3; // halt once this close to an obstacle

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

enum class Pole { Init, Goal };

/// U = 0.5 * k_p * |z - pole|^2
double attractive_potential(const ConfigPoint& z, const ConfigPoint& pole, double gain);

/// -grad U = -k_p * (z - pole)
ConfigPoint attractive_force(const ConfigPoint& z, const ConfigPoint& pole, double gain);

/// Walks z toward `pole` in unit-force steps of params.step, at most
/// params.steps times. Stops early when the nearest obstacle is within
/// obstacle_stop_distance, when the next endpoint would not be free, or on
/// reaching the pole. The last step is clamped so it never overshoots.
ConfigPoint descend(const ConfigPoint& z, const ConfigPoint& pole, const PotentialParams& params,
                    const Environment& env);

/// Single-pole guidance toward the goal.
ConfigPoint rgd(const ConfigPoint& z_rand, const ConfigPoint& z_goal, const PotentialParams& params,
                const Environment& env);

/// Alternating-pole guidance: even iterations pull toward the goal, odd ones
/// toward the start.
Pole bpg_pole(std::size_t iteration);
ConfigPoint bpg(const ConfigPoint& z_rand, std::size_t iteration, const ConfigPoint& z_init,
                const ConfigPoint& z_goal, const PotentialParams& params, const Environment& env);

}  // namespace pgbrrt
