#include "pgbrrt/svg.hpp"

#include <charconv>
#include <stdexcept>

namespace pgbrrt {
namespace {

constexpr const char* kTreeStroke[] = {"#1f77b4", "#2ca02c"};

std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 3);
  return std::string(buf, res.ptr);
}

class Projector {
 public:
  Projector(const Bounds& b, std::array<std::size_t, 2> axes, double width)
      : axes_(axes), min_x_(b.min[axes[0]]), max_y_(b.max[axes[1]]) {
    const double span_x = b.max[axes[0]] - b.min[axes[0]];
    const double span_y = b.max[axes[1]] - b.min[axes[1]];
    scale_ = width / span_x;
    width_ = width;
    height_ = span_y * scale_;
  }
  double x(const ConfigPoint& z) const { return (z[axes_[0]] - min_x_) * scale_; }
  double y(const ConfigPoint& z) const { return (max_y_ - z[axes_[1]]) * scale_; }
  double len(double v) const { return v * scale_; }
  double width() const { return width_; }
  double height() const { return height_; }
  std::size_t ax(int i) const { return axes_[i]; }

 private:
  std::array<std::size_t, 2> axes_;
  double min_x_, max_y_, scale_ = 1.0, width_ = 0.0, height_ = 0.0;
};

}  // namespace

TreeDrawing drawing_of(const MotionTree& tree) {
  TreeDrawing d;
  d.points = tree.points();
  for (VertexId v = 0; v < tree.size(); ++v) {
    const auto p = tree.parent(v);
    d.parents.push_back(p ? static_cast<long long>(*p) : -1);
  }
  return d;
}

TreeDrawing drawing_of(const TreeDump& dump) { return {dump.points, dump.parents}; }

std::string render_svg(const Environment& env, std::span<const TreeDrawing> trees, const Path* best_path,
                       const SvgOptions& options) {
  std::array<std::size_t, 2> axes{0, 1};
  if (env.dimension() > 2) {
    if (!options.projection) throw std::invalid_argument("render_svg: d > 2 requires a projection axis pair");
    axes = *options.projection;
  } else if (options.projection) {
    axes = *options.projection;
  }
  if (axes[0] >= env.dimension() || axes[1] >= env.dimension() || axes[0] == axes[1]) {
    throw std::invalid_argument("render_svg: invalid projection axes");
  }
  const Projector P(env.bounds(), axes, options.width_px);

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(P.width()) + "\" height=\"" +
       num(P.height()) + "\" viewBox=\"0 0 " + num(P.width()) + " " + num(P.height()) + "\">\n";
  s += "<rect class=\"bounds\" x=\"0\" y=\"0\" width=\"" + num(P.width()) + "\" height=\"" + num(P.height()) +
       "\" fill=\"white\" stroke=\"black\"/>\n";

  s += "<g class=\"obstacles\" fill=\"#555555\">\n";
  for (const auto& o : env.obstacles()) {
    if (const auto* box = std::get_if<Box>(&o)) {
      ConfigPoint top_left = box->min;
      top_left[P.ax(1)] = box->max[P.ax(1)];
      s += "<rect class=\"obstacle\" x=\"" + num(P.x(top_left)) + "\" y=\"" + num(P.y(top_left)) + "\" width=\"" +
           num(P.len(box->max[P.ax(0)] - box->min[P.ax(0)])) + "\" height=\"" +
           num(P.len(box->max[P.ax(1)] - box->min[P.ax(1)])) + "\"/>\n";
    } else {
      const auto& sp = std::get<Sphere>(o);
      s += "<circle class=\"obstacle\" cx=\"" + num(P.x(sp.center)) + "\" cy=\"" + num(P.y(sp.center)) +
           "\" r=\"" + num(P.len(sp.radius)) + "\"/>\n";
    }
  }
  s += "</g>\n";

  for (std::size_t t = 0; t < trees.size(); ++t) {
    const TreeDrawing& tree = trees[t];
    const char* stroke = kTreeStroke[t % 2];
    s += "<g class=\"tree\" id=\"tree" + std::to_string(t) + "\" stroke=\"" + stroke + "\" fill=\"" + stroke +
         "\" stroke-width=\"0.6\">\n";
    for (std::size_t v = 0; v < tree.points.size(); ++v) {
      const long long p = tree.parents[v];
      if (p < 0) continue;
      const ConfigPoint& a = tree.points[static_cast<std::size_t>(p)];
      const ConfigPoint& b = tree.points[v];
      s += "<line class=\"edge\" x1=\"" + num(P.x(a)) + "\" y1=\"" + num(P.y(a)) + "\" x2=\"" + num(P.x(b)) +
           "\" y2=\"" + num(P.y(b)) + "\"/>\n";
    }
    for (const auto& z : tree.points) {
      s += "<circle class=\"vertex\" cx=\"" + num(P.x(z)) + "\" cy=\"" + num(P.y(z)) + "\" r=\"1.2\"/>\n";
    }
    s += "</g>\n";
  }

  s += "<circle class=\"goal-region\" cx=\"" + num(P.x(env.goal())) + "\" cy=\"" + num(P.y(env.goal())) +
       "\" r=\"" + num(P.len(env.goal_radius())) + "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
  s += "<circle class=\"start\" cx=\"" + num(P.x(env.start())) + "\" cy=\"" + num(P.y(env.start())) +
       "\" r=\"4\" fill=\"#ff7f0e\"/>\n";
  s += "<circle class=\"goal\" cx=\"" + num(P.x(env.goal())) + "\" cy=\"" + num(P.y(env.goal())) +
       "\" r=\"4\" fill=\"#d62728\"/>\n";

  if (best_path && !best_path->points.empty()) {
    s += "<polyline class=\"best-path\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2.5\" points=\"";
    for (std::size_t i = 0; i < best_path->points.size(); ++i) {
      if (i) s += ' ';
      s += num(P.x(best_path->points[i])) + "," + num(P.y(best_path->points[i]));
    }
    s += "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace pgbrrt
