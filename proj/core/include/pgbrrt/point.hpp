#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace pgbrrt {

inline constexpr std::size_t kMaxDimension = 8;

/// A configuration z in Z. Fixed capacity, so points are trivially copyable
/// and trees store them contiguously.
class ConfigPoint {
 public:
  ConfigPoint() = default;
  ConfigPoint(std::initializer_list<double> coords);
  explicit ConfigPoint(std::span<const double> coords);

  static ConfigPoint zeros(std::size_t dimension);

  std::size_t dimension() const { return dim_; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  std::span<const double> coords() const { return {c_.data(), dim_}; }
  std::vector<double> to_vector() const { return {c_.begin(), c_.begin() + dim_}; }

  bool all_finite() const;

  friend bool operator==(const ConfigPoint& a, const ConfigPoint& b);

  ConfigPoint& operator+=(const ConfigPoint& o);
  ConfigPoint& operator-=(const ConfigPoint& o);
  ConfigPoint& operator*=(double s);

 private:
  std::array<double, kMaxDimension> c_{};
  std::uint8_t dim_ = 0;
};

ConfigPoint operator+(ConfigPoint a, const ConfigPoint& b);
ConfigPoint operator-(ConfigPoint a, const ConfigPoint& b);
ConfigPoint operator*(ConfigPoint a, double s);
ConfigPoint operator*(double s, ConfigPoint a);

double squared_norm(const ConfigPoint& v);
double norm(const ConfigPoint& v);
double squared_distance(const ConfigPoint& a, const ConfigPoint& b);
double distance(const ConfigPoint& a, const ConfigPoint& b);

/// Throws std::invalid_argument when the dimensions differ.
void require_same_dimension(const ConfigPoint& a, const ConfigPoint& b, const char* what);

/// A polyline through configuration space.
struct Path {
  std::vector<ConfigPoint> points;

  /// Sum of Euclidean segment lengths.
  double length() const;
  bool empty() const { return points.empty(); }
};

}  // namespace pgbrrt
