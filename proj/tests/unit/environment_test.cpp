#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pgbrrt/environment.hpp"
#include "pgbrrt/errors.hpp"
#include "pgbrrt/scenario.hpp"

using namespace pgbrrt;

namespace {

Environment unit_square(std::vector<Obstacle> obstacles = {}) {
  return Environment(Bounds{{0.0, 0.0}, {1.0, 1.0}}, std::move(obstacles), {0.1, 0.1}, {0.9, 0.1}, 0.05);
}

Environment quarter_box_square() { return unit_square({Box{{0.5, 0.5}, {1.0, 1.0}}}); }

// Minimum distance from z to a densely sampled box boundary, independent of
// the library's closed-form clamp.
double sampled_box_distance(const ConfigPoint& z, double x0, double x1, double y0, double y1) {
  constexpr int kSteps = 20000;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kSteps; ++k) {
    const double t = static_cast<double>(k) / kSteps;
    const double x = x0 + t * (x1 - x0);
    const double y = y0 + t * (y1 - y0);
    for (const ConfigPoint& p : {ConfigPoint{x, y0}, ConfigPoint{x, y1}, ConfigPoint{x0, y}, ConfigPoint{x1, y}}) {
      best = std::min(best, distance(z, p));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("is_free follows the closed-obstacle convention") {
  const Environment open = unit_square();
  CHECK(open.is_free({0.5, 0.5}));

  const Environment env = quarter_box_square();
  CHECK_FALSE(env.is_free({0.75, 0.75}));

  const ConfigPoint on_face{0.5, 0.75};
  CHECK(env.nearest_obstacle_distance(on_face) == 0.0);
  CHECK_FALSE(env.is_free(on_face));
  CHECK_FALSE(env.is_free({1.5, 0.2}));

  CHECK_THROWS_AS(env.is_free({0.5, 0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("sample_free is uniform over the free quadrants") {
  const Environment env = quarter_box_square();
  SeededRandomSource rng(11);
  constexpr int kSamples = 100'000;
  int lower_left = 0, lower_right = 0, upper_left = 0;
  for (int k = 0; k < kSamples; ++k) {
    const ConfigPoint z = env.sample_free(rng);
    REQUIRE(env.is_free(z));
    if (z[0] < 0.5 && z[1] < 0.5) ++lower_left;
    else if (z[1] < 0.5) ++lower_right;
    else ++upper_left;
  }
  CHECK(std::abs(lower_left / double(kSamples) - 1.0 / 3.0) <= 0.02);
  CHECK(std::abs(lower_right / double(kSamples) - 1.0 / 3.0) <= 0.02);
  CHECK(std::abs(upper_left / double(kSamples) - 1.0 / 3.0) <= 0.02);
}

TEST_CASE("sample_free is bitwise repeatable and honours the rejection cap") {
  const Environment env = quarter_box_square();
  SeededRandomSource a(5), b(5);
  for (int k = 0; k < 100; ++k) {
    const ConfigPoint p = env.sample_free(a);
    const ConfigPoint q = env.sample_free(b);
    CHECK(p == q);
  }

  Environment crowded(Bounds{{0.0, 0.0}, {1.0, 1.0}}, {Box{{0.0, 0.2}, {1.0, 1.0}}, Box{{0.2, 0.0}, {1.0, 0.2}}},
                      {0.05, 0.05}, {0.15, 0.15}, 0.01);
  crowded.set_rejection_cap(20);
  SeededRandomSource rng(1);
  bool threw = false;
  for (int k = 0; k < 50 && !threw; ++k) {
    try {
      const ConfigPoint z = crowded.sample_free(rng);
      CHECK(crowded.is_free(z));
    } catch (const DegenerateEnvironment&) {
      threw = true;
    }
  }
  CHECK(threw);
}

TEST_CASE("nearest_obstacle_distance") {
  const Environment open = unit_square();
  CHECK(std::isinf(open.nearest_obstacle_distance({0.3, 0.3})));

  const Environment env(Bounds{{-5.0, -5.0}, {5.0, 5.0}}, {Box{{2.0, -1.0}, {3.0, 1.0}}}, {-4.0, -4.0},
                        {4.0, 4.0}, 0.5);
  const ConfigPoint origin{0.0, 0.0};
  CHECK(env.nearest_obstacle_distance({2.5, 0.0}) == 0.0);
  const double oracle = sampled_box_distance(origin, 2.0, 3.0, -1.0, 1.0);
  CHECK(std::abs(env.nearest_obstacle_distance(origin) - 2.0) <= 1e-12);
  CHECK(std::abs(env.nearest_obstacle_distance(origin) - oracle) <= 1e-6);
  const ConfigPoint diag{0.0, 3.0};
  CHECK(std::abs(env.nearest_obstacle_distance(diag) - sampled_box_distance(diag, 2.0, 3.0, -1.0, 1.0)) <= 1e-6);
}

TEST_CASE("nearest_obstacle_distance is 1-Lipschitz and agrees with is_free") {
  const Environment env = load_scenario_file(PGBRRT_SCENARIO_DIR "/cluttered2d.json");
  SeededRandomSource rng(3);
  for (int k = 0; k < 2000; ++k) {
    const ConfigPoint a = env.sample_bounds(rng);
    const ConfigPoint b = env.sample_bounds(rng);
    const double fa = env.nearest_obstacle_distance(a);
    const double fb = env.nearest_obstacle_distance(b);
    CHECK(std::abs(fa - fb) <= distance(a, b) + 1e-12);
    CHECK(env.is_free(a) == (fa > 0.0));
  }
}

TEST_CASE("segment_free") {
  const Environment env(Bounds{{-3.0, -3.0}, {3.0, 3.0}},
                        {Box{{-0.5, -2.5}, {0.5, -1.5}}, Sphere{{0.0, 1.0}, 1.0}}, {-2.5, -2.5}, {2.5, 2.5},
                        0.3);
  const ConfigPoint a{-2.0, -2.8};
  CHECK(env.segment_free(a, a, 1e-3));

  // Crosses the box's left and right faces.
  CHECK_FALSE(env.segment_free({-2.0, -2.0}, {2.0, -2.0}, 1e-3));
  CHECK_FALSE(env.segment_free({-2.0, -2.0}, {2.0, -2.0}, 10.0));
  // Tangent to the sphere at the origin: distance from centre equals radius.
  CHECK_FALSE(env.segment_free({-2.0, 0.0}, {2.0, 0.0}, 1e-3));
  CHECK(env.segment_free({-2.0, -0.01}, {2.0, -0.01}, 1e-3));

  SeededRandomSource rng(9);
  for (int k = 0; k < 2000; ++k) {
    const ConfigPoint p = env.sample_bounds(rng);
    const ConfigPoint q = env.sample_bounds(rng);
    const bool pq = env.segment_free(p, q, 1e-3);
    CHECK(pq == env.segment_free(q, p, 1e-3));
    if (pq) CHECK((env.is_free(p) && env.is_free(q)));
  }
  CHECK_THROWS_AS(env.segment_free(a, a, 0.0), std::invalid_argument);
}

TEST_CASE("free_measure_estimate") {
  SeededRandomSource rng(2);
  const Environment open = unit_square();
  CHECK(std::abs(open.free_measure_estimate(100'000, rng) - 1.0) < 0.01);

  const Environment env = quarter_box_square();
  CHECK(std::abs(env.free_measure_estimate(100'000, rng) - 0.75) <= 0.01);

  const double one = env.free_measure_estimate(1, rng);
  CHECK((one == 0.0 || one == 1.0));
}

TEST_CASE("environment validation names the failed invariant") {
  try {
    (void)unit_square({Box{{0.0, 0.0}, {0.2, 0.2}}});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("start") != std::string::npos);
  }
  CHECK_THROWS_AS(Environment(Bounds{{0.0, 0.0}, {1.0, 1.0}}, {}, {0.1, 0.1}, {0.9, 0.9}, 0.0), ValidationError);
  CHECK_THROWS_AS(Environment(Bounds{{0.0, 0.0}, {1.0, 1.0}}, {Sphere{{0.5, 0.5, 0.5}, 0.1}}, {0.1, 0.1},
                              {0.9, 0.9}, 0.1),
                  ValidationError);
}
