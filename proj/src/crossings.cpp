#include "voidroute/crossings.h"

#include <algorithm>

namespace voidroute {

namespace {

struct Box {
  std::int64_t min_x, max_x, min_y, max_y;
};

bool boxes_meet(const Box& p, const Box& q) {
  return p.min_x <= q.max_x && q.min_x <= p.max_x && p.min_y <= q.max_y && q.min_y <= p.max_y;
}

// Shared-endpoint pairs meet only at the shared node unless they are
// collinear and point the same way.
bool shared_endpoint_overlap(const GeometricGraph& g, const Edge& e1, const Edge& e2) {
  NodeId shared = e1.has(e2.a) ? e2.a : e2.b;
  const Point& o = g.position(shared);
  const Point& p = g.position(e1.other(shared));
  const Point& q = g.position(e2.other(shared));
  return orient(o, p, q) == 0 && sgn(dot(p - o, q - o)) > 0;
}

}  // namespace

CrossingIndex::CrossingIndex(const GeometricGraph& g)
    : edges_(g.edges()), along_(g.edge_count()) {
  const auto& edges = g.edges();
  const std::size_t m = edges.size();
  auto frame = lattice_frame(g.positions());

  std::vector<Box> boxes;
  if (frame) {
    boxes.reserve(m);
    for (const auto& e : edges) {
      const auto ax = frame->xs[e.a], ay = frame->ys[e.a];
      const auto bx = frame->xs[e.b], by = frame->ys[e.b];
      boxes.push_back({std::min(ax, bx), std::max(ax, bx), std::min(ay, by), std::max(ay, by)});
    }
  }

  auto record = [&](std::size_t i, std::size_t j) {
    const Segment si = g.segment(edges[i]);
    const Segment sj = g.segment(edges[j]);
    const auto hit = segment_intersection(si, sj);
    if (std::holds_alternative<std::monostate>(hit)) return;
    if (std::holds_alternative<OverlapInterval>(hit)) {
      overlaps_.push_back({i, j});
      return;
    }
    const auto& contact = std::get<PointContact>(hit);
    const bool proper = !contact.endpoint_contact;
    along_[i].push_back({j, contact.point, param_along(si, contact.point), proper});
    along_[j].push_back({i, contact.point, param_along(sj, contact.point), proper});
    pairs_.push_back({i, j, contact.point, proper});
  };

  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const Edge& e1 = edges[i];
      const Edge& e2 = edges[j];
      if (e1 == e2) {
        overlaps_.push_back({i, j});
        continue;
      }
      if (e1.has(e2.a) || e1.has(e2.b)) {
        if (shared_endpoint_overlap(g, e1, e2)) overlaps_.push_back({i, j});
        continue;
      }
      if (frame) {
        if (!boxes_meet(boxes[i], boxes[j])) continue;
        const auto& xs = frame->xs;
        const auto& ys = frame->ys;
        const int o1 = orient_lattice(xs[e1.a], ys[e1.a], xs[e1.b], ys[e1.b], xs[e2.a], ys[e2.a]);
        const int o2 = orient_lattice(xs[e1.a], ys[e1.a], xs[e1.b], ys[e1.b], xs[e2.b], ys[e2.b]);
        if (o1 * o2 > 0) continue;
        const int o3 = orient_lattice(xs[e2.a], ys[e2.a], xs[e2.b], ys[e2.b], xs[e1.a], ys[e1.a]);
        const int o4 = orient_lattice(xs[e2.a], ys[e2.a], xs[e2.b], ys[e2.b], xs[e1.b], ys[e1.b]);
        if (o3 * o4 > 0) continue;
      }
      record(i, j);
    }
  }

  for (auto& list : along_) {
    std::sort(list.begin(), list.end(), [](const Crossing& x, const Crossing& y) {
      if (x.param != y.param) return x.param < y.param;
      return x.other < y.other;
    });
  }
}

std::optional<std::size_t> CrossingIndex::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

std::size_t CrossingIndex::proper_crossing_count() const {
  return static_cast<std::size_t>(
      std::count_if(pairs_.begin(), pairs_.end(), [](const CrossingPair& p) { return p.proper; }));
}

}  // namespace voidroute
