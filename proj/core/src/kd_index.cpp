#include "pgbrrt/kd_index.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "pgbrrt/errors.hpp"

namespace pgbrrt {

KdIndex::Id KdIndex::insert(const ConfigPoint& p) {
  if (p.dimension() != dim_) throw std::invalid_argument("KdIndex::insert: dimension mismatch");
  if (nodes_.size() >= kNone) throw std::length_error("KdIndex: too many points");
  const auto id = static_cast<Id>(nodes_.size());
  Node node{p};
  if (nodes_.empty()) {
    nodes_.push_back(node);
    return id;
  }
  Id cur = 0;
  for (;;) {
    Node& n = nodes_[cur];
    Id& child = p[n.axis] < n.point[n.axis] ? n.left : n.right;
    if (child == kNone) {
      node.axis = static_cast<std::uint8_t>((n.axis + 1) % dim_);
      child = id;
      break;
    }
    cur = child;
  }
  nodes_.push_back(node);
  return id;
}

KdIndex::Id KdIndex::nearest(const ConfigPoint& z) const {
  if (nodes_.empty()) throw EmptyTreeError();
  Id best = kNone;
  double best_d2 = std::numeric_limits<double>::infinity();

  struct Frame {
    Id node;
    double plane_d2;
  };
  std::vector<Frame> stack;
  stack.reserve(64);
  stack.push_back({0, 0.0});
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.plane_d2 > best_d2) continue;
    const Node& n = nodes_[f.node];
    const double d2 = squared_distance(z, n.point);
    if (d2 < best_d2 || (d2 == best_d2 && f.node < best)) {
      best_d2 = d2;
      best = f.node;
    }
    const double diff = z[n.axis] - n.point[n.axis];
    const Id near_child = diff < 0.0 ? n.left : n.right;
    const Id far_child = diff < 0.0 ? n.right : n.left;
    // Far side first on the stack so the near side is explored first.
    if (far_child != kNone) stack.push_back({far_child, diff * diff});
    if (near_child != kNone) stack.push_back({near_child, 0.0});
  }
  return best;
}

void KdIndex::radius_query(const ConfigPoint& z, double radius, std::vector<Id>& out) const {
  if (nodes_.empty() || radius < 0.0) return;
  const double r2 = radius * radius;
  const std::size_t first = out.size();
  std::vector<Id> stack;
  stack.reserve(64);
  stack.push_back(0);
  while (!stack.empty()) {
    const Id id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    if (squared_distance(z, n.point) <= r2) out.push_back(id);
    const double diff = z[n.axis] - n.point[n.axis];
    // Points equal on the split axis live on the right.
    if (n.left != kNone && (diff < 0.0 || diff * diff <= r2)) stack.push_back(n.left);
    if (n.right != kNone && (diff >= 0.0 || diff * diff <= r2)) stack.push_back(n.right);
  }
  std::sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end());
}

}  // namespace pgbrrt
