#include "voidroute/render.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace voidroute {

namespace {

const char* color_for(RouteMode m) {
  switch (m) {
    case RouteMode::kGreedy: return "#1f77b4";
    case RouteMode::kVoidTraversal: return "#d62728";
    case RouteMode::kFaceTraversal: return "#2ca02c";
  }
  return "#000000";
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const GeometricGraph& g, const RouteTrace* trace, const RenderOptions& options) {
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (g.node_count() > 0) {
    min_x = max_x = to_double(g.position(0).x);
    min_y = max_y = to_double(g.position(0).y);
    for (const auto& p : g.positions()) {
      min_x = std::min(min_x, to_double(p.x));
      max_x = std::max(max_x, to_double(p.x));
      min_y = std::min(min_y, to_double(p.y));
      max_y = std::max(max_y, to_double(p.y));
    }
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double scale = (options.size - 2.0 * options.margin) / span;
  auto px = [&](const Point& p) { return options.margin + (to_double(p.x) - min_x) * scale; };
  // SVG y grows downward.
  auto py = [&](const Point& p) { return options.size - options.margin - (to_double(p.y) - min_y) * scale; };
  auto line = [&](std::ostringstream& out, const Point& a, const Point& b, const std::string& style) {
    out << "<line x1=\"" << num(px(a)) << "\" y1=\"" << num(py(a)) << "\" x2=\"" << num(px(b))
        << "\" y2=\"" << num(py(b)) << "\" " << style << "/>\n";
  };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << options.size
      << "\" height=\"" << options.size << "\" viewBox=\"0 0 " << options.size << " " << options.size
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g id=\"edges\">\n";
  for (const auto& e : g.edges()) {
    line(out, g.position(e.a), g.position(e.b), "stroke=\"#bbbbbb\" stroke-width=\"1\"");
  }
  out << "</g>\n";

  if (trace) {
    out << "<g id=\"route\">\n";
    if (trace->source < g.node_count() && trace->target < g.node_count()) {
      line(out, g.position(trace->source), g.position(trace->target),
           "stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6,4\"");
    }
    std::size_t next_change = 0;
    RouteMode mode = RouteMode::kGreedy;
    for (const auto& x : trace->transmissions) {
      while (next_change < trace->mode_log.size() && trace->mode_log[next_change].at <= x.seq) {
        mode = trace->mode_log[next_change++].mode;
      }
      if (x.from >= g.node_count() || x.to >= g.node_count()) continue;
      const char* dash = x.kind == TransmissionKind::kDataForward || x.kind == TransmissionKind::kEdgeSelection
                             ? ""
                             : " stroke-dasharray=\"3,3\"";
      line(out, g.position(x.from), g.position(x.to),
           std::string("stroke=\"") + color_for(mode) + "\" stroke-width=\"3\" stroke-opacity=\"0.7\"" + dash);
    }
    for (const auto& a : trace->anchors) {
      out << "<rect x=\"" << num(px(a) - 4) << "\" y=\"" << num(py(a) - 4)
          << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\"2\"/>\n";
    }
    out << "</g>\n";
  }

  out << "<g id=\"nodes\">\n";
  for (NodeId n = 0; n < g.node_count(); ++n) {
    const Point& p = g.position(n);
    const bool end = trace && (n == trace->source || n == trace->target);
    out << "<circle cx=\"" << num(px(p)) << "\" cy=\"" << num(py(p)) << "\" r=\"" << (end ? 6 : 3)
        << "\" fill=\"" << (end ? "#000000" : "#444444") << "\"><title>" << n << "</title></circle>\n";
  }
  out << "</g>\n</svg>\n";
  return out.str();
}

}  // namespace voidroute
