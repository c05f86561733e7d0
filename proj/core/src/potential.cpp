#include "pgbrrt/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pgbrrt {

void PotentialParams::validate() const {
  if (!(attractive_gain > 0.0) || !std::isfinite(attractive_gain)) {
    throw std::invalid_argument("potential: k_p must be > 0");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("potential: eps_pot must be > 0");
  if (!(obstacle_stop_distance > 0.0) || !std::isfinite(obstacle_stop_distance)) {
    throw std::invalid_argument("potential: d_obs must be > 0");
  }
}

double attractive_potential(const ConfigPoint& z, const ConfigPoint& pole, double gain) {
  return 0.5 * gain * squared_distance(z, pole);
}

ConfigPoint attractive_force(const ConfigPoint& z, const ConfigPoint& pole, double gain) {
  require_same_dimension(z, pole, "attractive_force");
  return (pole - z) * gain;
}

ConfigPoint descend(const ConfigPoint& z, const ConfigPoint& pole, const PotentialParams& params,
                    const Environment& env) {
  ConfigPoint current = z;
  for (std::size_t k = 0; k < params.steps; ++k) {
    const ConfigPoint force = attractive_force(current, pole, params.attractive_gain);
    const double magnitude = norm(force);
    if (magnitude == 0.0) break;
    if (env.nearest_obstacle_distance(current) <= params.obstacle_stop_distance) break;

    const double remaining = distance(current, pole);
    ConfigPoint next = remaining <= params.step ? pole : current + force * (params.step / magnitude);
    if (!env.is_free(next)) break;
    current = next;
  }
  return current;
}

ConfigPoint rgd(const ConfigPoint& z_rand, const ConfigPoint& z_goal, const PotentialParams& params,
                const Environment& env) {
  return descend(z_rand, z_goal, params, env);
}

Pole bpg_pole(std::size_t iteration) { return iteration % 2 == 0 ? Pole::Goal : Pole::Init; }

ConfigPoint bpg(const ConfigPoint& z_rand, std::size_t iteration, const ConfigPoint& z_init,
                const ConfigPoint& z_goal, const PotentialParams& params, const Environment& env) {
  return descend(z_rand, bpg_pole(iteration) == Pole::Goal ? z_goal : z_init, params, env);
}

}  // namespace pgbrrt
