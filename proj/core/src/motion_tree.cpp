#include "pgbrrt/motion_tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "pgbrrt/errors.hpp"

namespace pgbrrt {

double near_radius(std::size_t n, std::size_t dimension, double gamma, double max_radius, double log_base) {
  if (n <= 1) return max_radius;
  const double nd = static_cast<double>(n);
  double log_n = std::log(nd);
  if (log_base > 0.0) log_n /= std::log(log_base);
  return gamma * std::pow(log_n / nd, 1.0 / static_cast<double>(dimension));
}

double near_radius(std::size_t n, const RadiusPolicy& policy) {
  return near_radius(n, policy.dimension, policy.gamma, policy.max_radius, policy.log_base);
}

MotionTree::MotionTree(const ConfigPoint& root) : index_(root.dimension()) {
  points_.push_back(root);
  parent_.push_back(kNoParent);
  edge_cost_.push_back(0.0);
  cost_.push_back(0.0);
  children_.emplace_back();
  index_.insert(root);
}

std::optional<VertexId> MotionTree::parent(VertexId v) const {
  if (parent_[v] == kNoParent) return std::nullopt;
  return parent_[v];
}

VertexId MotionTree::nearest(const ConfigPoint& z) const { return index_.nearest(z); }

std::vector<VertexId> MotionTree::within(const ConfigPoint& z, double radius) const {
  std::vector<VertexId> out;
  index_.radius_query(z, radius, out);
  return out;
}

VertexId MotionTree::insert(const ConfigPoint& z, VertexId parent) {
  if (parent >= points_.size()) {
    throw std::invalid_argument("vertex_insert: parent index " + std::to_string(parent) + " out of range");
  }
  if (z.dimension() != dimension()) throw std::invalid_argument("vertex_insert: dimension mismatch");
  const auto v = static_cast<VertexId>(points_.size());
  const double edge = distance(points_[parent], z);
  points_.push_back(z);
  parent_.push_back(parent);
  edge_cost_.push_back(edge);
  cost_.push_back(cost_[parent] + edge);
  children_.emplace_back();
  children_[parent].push_back(v);
  index_.insert(z);
  return v;
}

void MotionTree::reparent(VertexId v, VertexId new_parent) {
  if (v == root() || v >= points_.size() || new_parent >= points_.size()) {
    throw std::invalid_argument("reparent: bad vertex index");
  }
  auto& siblings = children_[parent_[v]];
  siblings.erase(std::find(siblings.begin(), siblings.end(), v));
  parent_[v] = new_parent;
  children_[new_parent].push_back(v);
  edge_cost_[v] = distance(points_[new_parent], points_[v]);
  cost_[v] = cost_[new_parent] + edge_cost_[v];

  std::vector<VertexId> stack(children_[v].begin(), children_[v].end());
  while (!stack.empty()) {
    const VertexId c = stack.back();
    stack.pop_back();
    cost_[c] = cost_[parent_[c]] + edge_cost_[c];
    stack.insert(stack.end(), children_[c].begin(), children_[c].end());
  }
}

VertexId nearest_vertex(const MotionTree& tree, const ConfigPoint& z) { return tree.nearest(z); }

std::vector<VertexId> neighboring_vertices(const MotionTree& tree, const ConfigPoint& z,
                                           const RadiusPolicy& policy) {
  return tree.within(z, near_radius(tree.size(), policy));
}

CandidateList list_sorting(const MotionTree& tree, const ConfigPoint& z, std::span<const VertexId> near) {
  CandidateList list;
  list.reserve(near.size());
  for (VertexId v : near) {
    const double link = distance(tree.point(v), z);
    list.push_back({v, tree.cost(v) + link, link});
  }
  std::sort(list.begin(), list.end(), [](const Candidate& a, const Candidate& b) {
    return a.total_cost < b.total_cost || (a.total_cost == b.total_cost && a.vertex < b.vertex);
  });
  return list;
}

std::optional<VertexId> pick_best_parent(const Environment& env, const MotionTree& tree, const ConfigPoint& z,
                                         const CandidateList& list, double resolution) {
  for (const Candidate& c : list) {
    if (env.segment_free(tree.point(c.vertex), z, resolution)) return c.vertex;
  }
  return std::nullopt;
}

VertexId vertex_insert(MotionTree& tree, const ConfigPoint& z, VertexId parent) { return tree.insert(z, parent); }

std::size_t rewiring_vertices(const Environment& env, MotionTree& tree, VertexId new_vertex,
                              const CandidateList& list, double resolution) {
  std::size_t rewired = 0;
  const ConfigPoint& z = tree.point(new_vertex);
  for (const Candidate& c : list) {
    const VertexId v = c.vertex;
    if (v == new_vertex || v == MotionTree::root()) continue;
    const double through_new = tree.cost(new_vertex) + distance(z, tree.point(v));
    if (!(through_new < tree.cost(v) - kRewireTolerance)) continue;
    if (!env.segment_free(z, tree.point(v), resolution)) continue;
    tree.reparent(v, new_vertex);
    ++rewired;
  }
  return rewired;
}

Path extract_path(const MotionTree& tree, VertexId v) {
  if (!tree.contains(v)) throw std::invalid_argument("extract_path: vertex out of range");
  Path path;
  for (std::optional<VertexId> cur = v; cur; cur = tree.parent(*cur)) path.points.push_back(tree.point(*cur));
  std::reverse(path.points.begin(), path.points.end());
  return path;
}

std::vector<std::string> audit_tree(const MotionTree& tree, const AuditOptions& options) {
  std::vector<std::string> violations;
  const std::size_t n = tree.size();
  auto report = [&](VertexId v, const std::string& what) {
    violations.push_back("vertex " + std::to_string(v) + ": " + what);
  };

  if (tree.parent(MotionTree::root())) report(0, "root has a parent");
  if (tree.cost(MotionTree::root()) != 0.0) report(0, "root cost is not 0");

  std::vector<std::size_t> child_refs(n, 0);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId c : tree.children(v)) {
      if (c >= n) {
        report(v, "child index out of range");
        continue;
      }
      if (tree.parent(c) != v) report(c, "listed as child of a vertex that is not its parent");
      ++child_refs[c];
    }
  }

  // depth[v]: 0 unknown, otherwise depth + 1; -1 while on the current walk.
  std::vector<long long> state(n, 0);
  state[0] = 1;
  for (VertexId v = 1; v < n; ++v) {
    const auto p = tree.parent(v);
    if (!p) {
      report(v, "non-root vertex without parent");
      continue;
    }
    if (*p >= n) {
      report(v, "parent index out of range");
      continue;
    }
    if (child_refs[v] != 1) report(v, "appears " + std::to_string(child_refs[v]) + " times in child lists");

    const double expected = tree.cost(*p) + tree.edge_cost(v);
    if (std::abs(tree.cost(v) - expected) > options.cost_tolerance) report(v, "cost recursion violated");
    if (std::abs(tree.edge_cost(v) - distance(tree.point(*p), tree.point(v))) > options.cost_tolerance) {
      report(v, "edge cost differs from edge length");
    }
    if (options.env && !options.env->segment_free(tree.point(*p), tree.point(v), options.resolution)) {
      report(v, "edge to parent is not collision-free");
    }

    if (state[v] != 0) continue;
    std::vector<VertexId> walk;
    VertexId cur = v;
    bool cyclic = false;
    while (state[cur] == 0) {
      state[cur] = -1;
      walk.push_back(cur);
      const auto up = tree.parent(cur);
      if (!up || *up >= n) break;
      cur = *up;
      if (state[cur] == -1) {
        cyclic = true;
        break;
      }
    }
    if (cyclic) report(v, "parent chain contains a cycle");
    for (VertexId w : walk) state[w] = cyclic ? -2 : 1;
  }
  return violations;
}

namespace {

void append_number(std::string& out, double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  out.append(buf, res.ptr);
}

}  // namespace

std::string dump_tree(const MotionTree& tree) {
  std::string out;
  for (VertexId v = 0; v < tree.size(); ++v) {
    out += std::to_string(v);
    out += ", ";
    const auto p = tree.parent(v);
    out += p ? std::to_string(*p) : "-1";
    for (double c : tree.point(v).coords()) {
      out += ", ";
      append_number(out, c);
    }
    out += ", ";
    append_number(out, tree.cost(v));
    out += '\n';
  }
  return out;
}

TreeDump parse_tree_dump(std::string_view text) {
  TreeDump dump;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t dimension = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> fields;
    std::istringstream ls(line);
    std::string field;
    while (std::getline(ls, field, ',')) {
      try {
        std::size_t used = 0;
        fields.push_back(std::stod(field, &used));
      } catch (const std::exception&) {
        throw ParseError("tree dump line " + std::to_string(line_no) + ": bad field '" + field + "'");
      }
    }
    if (fields.size() < 5) throw ParseError("tree dump line " + std::to_string(line_no) + ": too few fields");
    const std::size_t d = fields.size() - 3;
    if (dimension == 0) dimension = d;
    if (d != dimension) throw ParseError("tree dump line " + std::to_string(line_no) + ": dimension changes");
    if (static_cast<std::size_t>(fields[0]) != dump.points.size()) {
      throw ParseError("tree dump line " + std::to_string(line_no) + ": ids must be consecutive from 0");
    }
    dump.parents.push_back(static_cast<long long>(fields[1]));
    dump.points.emplace_back(std::span<const double>(fields.data() + 2, d));
    dump.costs.push_back(fields.back());
  }
  return dump;
}

}  // namespace pgbrrt
