#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pgbrrt/point.hpp"

namespace pgbrrt {

/// Insert-only k-d tree over points identified by insertion order.
/// Queries are exact: nearest() returns the lowest id among equidistant
/// points, radius_query() returns every id with squared distance <= r^2.
class KdIndex {
 public:
  using Id = std::uint32_t;

  explicit KdIndex(std::size_t dimension) : dim_(dimension) {}

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }

  Id insert(const ConfigPoint& p);

  /// Throws EmptyTreeError when empty.
  Id nearest(const ConfigPoint& z) const;

  /// Appends matching ids to `out` in ascending order.
  void radius_query(const ConfigPoint& z, double radius, std::vector<Id>& out) const;

 private:
  static constexpr Id kNone = UINT32_MAX;

  struct Node {
    ConfigPoint point;
    Id left = kNone;
    Id right = kNone;
    std::uint8_t axis = 0;
  };

  std::size_t dim_;
  std::vector<Node> nodes_;
};

}  // namespace pgbrrt
