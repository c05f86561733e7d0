#include "pgbrrt/point.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pgbrrt {

ConfigPoint::ConfigPoint(std::initializer_list<double> coords)
    : ConfigPoint(std::span<const double>(coords.begin(), coords.size())) {}

ConfigPoint::ConfigPoint(std::span<const double> coords) {
  if (coords.empty() || coords.size() > kMaxDimension) {
    throw std::invalid_argument("configuration dimension must be in [1, " +
                                std::to_string(kMaxDimension) + "], got " +
                                std::to_string(coords.size()));
  }
  std::copy(coords.begin(), coords.end(), c_.begin());
  dim_ = static_cast<std::uint8_t>(coords.size());
}

ConfigPoint ConfigPoint::zeros(std::size_t dimension) {
  std::array<double, kMaxDimension> z{};
  return ConfigPoint(std::span<const double>(z.data(), dimension));
}

bool ConfigPoint::all_finite() const {
  return std::all_of(c_.begin(), c_.begin() + dim_, [](double v) { return std::isfinite(v); });
}

bool operator==(const ConfigPoint& a, const ConfigPoint& b) {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i) {
    if (a.c_[i] != b.c_[i]) return false;
  }
  return true;
}

ConfigPoint& ConfigPoint::operator+=(const ConfigPoint& o) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
  return *this;
}

ConfigPoint& ConfigPoint::operator-=(const ConfigPoint& o) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
  return *this;
}

ConfigPoint& ConfigPoint::operator*=(double s) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] *= s;
  return *this;
}

ConfigPoint operator+(ConfigPoint a, const ConfigPoint& b) { return a += b; }
ConfigPoint operator-(ConfigPoint a, const ConfigPoint& b) { return a -= b; }
ConfigPoint operator*(ConfigPoint a, double s) { return a *= s; }
ConfigPoint operator*(double s, ConfigPoint a) { return a *= s; }

double squared_norm(const ConfigPoint& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.dimension(); ++i) s += v[i] * v[i];
  return s;
}

double norm(const ConfigPoint& v) { return std::sqrt(squared_norm(v)); }

double squared_distance(const ConfigPoint& a, const ConfigPoint& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double distance(const ConfigPoint& a, const ConfigPoint& b) { return std::sqrt(squared_distance(a, b)); }

void require_same_dimension(const ConfigPoint& a, const ConfigPoint& b, const char* what) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(a.dimension()) + " vs " + std::to_string(b.dimension()) +
                                ")");
  }
}

double Path::length() const {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
  return total;
}

}  // namespace pgbrrt
