#include "pgbrrt/scenario.hpp"

#include <nlohmann/json.hpp>

#include "pgbrrt/errors.hpp"
#include "pgbrrt/file_io.hpp"

namespace pgbrrt {
namespace {

using Json = nlohmann::ordered_json;

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("scenario: missing field '") + key + "'");
  return obj.at(key);
}

double as_number(const Json& v, const std::string& what) {
  if (!v.is_number()) throw ParseError("scenario: '" + what + "' must be a number");
  return v.get<double>();
}

ConfigPoint as_point(const Json& v, const std::string& what, std::size_t dimension) {
  if (!v.is_array() || v.empty()) throw ParseError("scenario: '" + what + "' must be a non-empty array of numbers");
  std::vector<double> coords;
  coords.reserve(v.size());
  for (const auto& c : v) coords.push_back(as_number(c, what));
  if (coords.size() != dimension) {
    throw ValidationError("dimension mismatch: '" + what + "' has " + std::to_string(coords.size()) +
                          " coordinates, scenario dimension is " + std::to_string(dimension));
  }
  return ConfigPoint(coords);
}

Json point_json(const ConfigPoint& z) {
  Json arr = Json::array();
  for (double c : z.coords()) arr.push_back(c);
  return arr;
}

}  // namespace

Environment load_scenario(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("scenario: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("scenario: top level must be an object");

  const Json& dim_json = require(doc, "dimension");
  if (!dim_json.is_number_integer() || dim_json.get<long long>() < 2 ||
      dim_json.get<long long>() > static_cast<long long>(kMaxDimension)) {
    throw ValidationError("dimension must be an integer in [2, " + std::to_string(kMaxDimension) + "]");
  }
  const auto d = dim_json.get<std::size_t>();

  const Json& bounds_json = require(doc, "bounds");
  Bounds bounds{as_point(require(bounds_json, "min"), "bounds.min", d),
                as_point(require(bounds_json, "max"), "bounds.max", d)};

  std::vector<Obstacle> obstacles;
  if (doc.contains("obstacles")) {
    const Json& list = doc.at("obstacles");
    if (!list.is_array()) throw ParseError("scenario: 'obstacles' must be an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const Json& o = list[k];
      const std::string tag = "obstacles[" + std::to_string(k) + "]";
      const Json& type = require(o, "type");
      if (type == "box") {
        obstacles.emplace_back(Box{as_point(require(o, "min"), tag + ".min", d),
                                   as_point(require(o, "max"), tag + ".max", d)});
      } else if (type == "sphere") {
        obstacles.emplace_back(Sphere{as_point(require(o, "center"), tag + ".center", d),
                                      as_number(require(o, "radius"), tag + ".radius")});
      } else {
        throw ParseError("scenario: " + tag + " has unknown type " + type.dump());
      }
    }
  }

  const ConfigPoint start = as_point(require(doc, "start"), "start", d);
  const ConfigPoint goal = as_point(require(doc, "goal"), "goal", d);
  const double goal_radius =
      doc.contains("goal_radius") ? as_number(doc.at("goal_radius"), "goal_radius") : kDefaultGoalRadius;

  Environment env(std::move(bounds), std::move(obstacles), start, goal, goal_radius);
  if (doc.contains("reference_cost")) {
    const double ref = as_number(doc.at("reference_cost"), "reference_cost");
    if (!(ref > 0.0)) throw ValidationError("reference_cost must be > 0");
    env.set_reference_cost(ref);
  }
  if (doc.contains("name")) {
    if (!doc.at("name").is_string()) throw ParseError("scenario: 'name' must be a string");
    env.set_name(doc.at("name").get<std::string>());
  }
  return env;
}

Environment load_scenario_file(const std::filesystem::path& path) {
  Environment env = load_scenario(read_text_file(path));
  if (env.name().empty()) env.set_name(path.stem().string());
  return env;
}

std::string serialize_scenario(const Environment& env) {
  Json doc = Json::object();
  if (!env.name().empty()) doc["name"] = env.name();
  doc["dimension"] = env.dimension();
  doc["bounds"] = Json{{"min", point_json(env.bounds().min)}, {"max", point_json(env.bounds().max)}};
  Json obstacles = Json::array();
  for (const auto& o : env.obstacles()) {
    if (const auto* box = std::get_if<Box>(&o)) {
      obstacles.push_back(Json{{"type", "box"}, {"min", point_json(box->min)}, {"max", point_json(box->max)}});
    } else {
      const auto& s = std::get<Sphere>(o);
      obstacles.push_back(Json{{"type", "sphere"}, {"center", point_json(s.center)}, {"radius", s.radius}});
    }
  }
  doc["obstacles"] = std::move(obstacles);
  doc["start"] = point_json(env.start());
  doc["goal"] = point_json(env.goal());
  doc["goal_radius"] = env.goal_radius();
  if (env.reference_cost()) doc["reference_cost"] = *env.reference_cost();
  return doc.dump(2) + "\n";
}

}  // namespace pgbrrt
