#include "voidroute/traversal.h"

#include <algorithm>

#include "voidroute/wire.h"

namespace voidroute {

namespace {

bool on_reference_ray(const Point& ref, const Point& dir) {
  return sgn(cross(ref, dir)) == 0 && sgn(dot(ref, dir)) > 0;
}

Point require_position(const Neighborhood& nbhd, NodeId n) { return nbhd.position(n); }

void require_on_edge(const Point& back, const Point& forward, const Point& p, const char* what) {
  if (!on_segment(Segment{back, forward}, p)) {
    throw Error(ErrorKind::kProtocol, std::string(what) + " is not on the current edge");
  }
}

std::vector<HalfSegment> cut_half_segments(const Cut& c) {
  return {HalfSegment{c.edge, c.edge.a, c.a_pos}, HalfSegment{c.edge, c.edge.b, c.b_pos}};
}

void put_edge(wire::Buffer& out, const Edge& e) {
  wire::put_u32(out, e.a);
  wire::put_u32(out, e.b);
}

void put_directed(wire::Buffer& out, const DirectedEdgeRef& d) {
  put_edge(out, d.edge);
  wire::put_u32(out, d.forward_end);
}

}  // namespace

std::size_t first_counter_clockwise(const Point& at, const Point& reference,
                                    std::span<const HalfSegment> candidates, bool strict) {
  if (candidates.empty()) throw Error(ErrorKind::kProtocol, "no candidate direction");
  const Point ref = reference - at;
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const Point di = candidates[i].toward_pos - at;
    const Point db = candidates[best].toward_pos - at;
    if (strict) {
      const bool zi = on_reference_ray(ref, di);
      const bool zb = on_reference_ray(ref, db);
      if (zi != zb) {
        if (zb) best = i;
        continue;
      }
    }
    if (compare_sweep(ref, di, db, Rotation::kCounterClockwise) < 0) best = i;
  }
  return best;
}

Coord directed_param(const Point& back, const Point& forward, const Point& p) {
  return param_along(Segment{back, forward}, p);
}

const Cut& nearer_cut(const Point& back, const Point& forward, const Cut& x, const Cut& y) {
  const Coord tx = directed_param(back, forward, x.point);
  const Coord ty = directed_param(back, forward, y.point);
  if (tx != ty) return tx < ty ? x : y;
  if (x.edge == y.edge) return x;
  std::vector<HalfSegment> cands = cut_half_segments(x);
  for (const auto& h : cut_half_segments(y)) cands.push_back(h);
  const std::size_t i = first_counter_clockwise(x.point, back, cands, true);
  return cands[i].edge == x.edge ? x : y;
}

std::optional<Cut> best_cut(const Neighborhood& nbhd, const DirectedEdgeRef& current,
                            const Point& entry_point, const CrossingIndex* cache) {
  const NodeId back_id = current.back_end();
  const Point back = require_position(nbhd, back_id);
  const Point forward = require_position(nbhd, current.forward_end);
  const Coord start = directed_param(back, forward, entry_point);
  const bool canonical = current.forward_end == current.edge.b;

  std::optional<Cut> best;
  auto consider = [&](Cut c) {
    best = best ? nearer_cut(back, forward, *best, c) : c;
  };

  std::optional<std::size_t> idx;
  if (cache) idx = cache->edge_index(current.edge);
  if (idx) {
    for (const auto& c : cache->along(*idx)) {
      if (!c.proper) continue;
      const Edge& other = cache->edge(c.other);
      if (!nbhd.contains_edge(other)) continue;
      const Coord t = canonical ? c.param : Coord(1 - c.param);
      if (t <= start || t >= 1) continue;
      consider(Cut{other, nbhd.position(other.a), nbhd.position(other.b), c.point});
    }
    return best;
  }

  const Segment cur{back, forward};
  for (const auto& e : nbhd.edges()) {
    if (e.has(current.edge.a) || e.has(current.edge.b)) continue;
    const Point pa = nbhd.position(e.a);
    const Point pb = nbhd.position(e.b);
    const auto hit = segment_intersection(cur, Segment{pa, pb});
    const auto* contact = std::get_if<PointContact>(&hit);
    if (!contact || contact->endpoint_contact) continue;
    const Coord t = param_along(cur, contact->point);
    if (t <= start || t >= 1) continue;
    consider(Cut{e, pa, pb, contact->point});
  }
  return best;
}

EdgeSelectionMsg handle_edge_change(NodeId node, const Neighborhood& nbhd, const EdgeChangeMsg& msg,
                                    const CrossingIndex* cache) {
  if (node != msg.current.back_end() || !msg.current.edge.has(msg.current.forward_end)) {
    throw Error(ErrorKind::kProtocol, "edge_change for " + to_string(msg.current.edge) +
                                          " delivered to node " + std::to_string(node));
  }
  const Point back = require_position(nbhd, node);
  const Point forward = require_position(nbhd, msg.current.forward_end);
  require_on_edge(back, forward, msg.entry_point, "entry point");
  if (msg.entry_point == forward) throw Error(ErrorKind::kProtocol, "entry point at the forward end");
  return EdgeSelectionMsg{msg.prev_edge, msg.current, msg.entry_point,
                          best_cut(nbhd, msg.current, msg.entry_point, cache)};
}

StepResolution resolve_step(NodeId node, const Neighborhood& nbhd, const EdgeSelectionMsg& sel,
                            const CrossingIndex* cache) {
  if (node != sel.current.forward_end || !sel.current.edge.has(node)) {
    throw Error(ErrorKind::kProtocol, "edge_selection for " + to_string(sel.current.edge) +
                                          " delivered to node " + std::to_string(node));
  }
  const Point back = require_position(nbhd, sel.current.back_end());
  const Point forward = require_position(nbhd, node);
  require_on_edge(back, forward, sel.entry_point, "entry point");
  const Coord start = directed_param(back, forward, sel.entry_point);
  if (sel.suggested) {
    require_on_edge(back, forward, sel.suggested->point, "suggested cut");
    const Coord t = directed_param(back, forward, sel.suggested->point);
    if (t <= start || t >= 1) throw Error(ErrorKind::kProtocol, "suggested cut outside the walk");
  }

  std::optional<Cut> cut = sel.suggested;
  if (auto own = best_cut(nbhd, sel.current, sel.entry_point, cache)) {
    cut = cut ? nearer_cut(back, forward, *cut, *own) : *own;
  }
  BoundaryStep step{sel.entry_point, cut ? cut->point : forward, sel.current.edge, node};
  return StepResolution{std::move(step), std::move(cut)};
}

EdgeChangeMsg turn_after(NodeId node, const Neighborhood& nbhd, const EdgeSelectionMsg& sel,
                         const StepResolution& res) {
  const Point back = require_position(nbhd, sel.current.back_end());
  const Point& at = res.step.to;
  std::vector<HalfSegment> cands;
  if (res.cut) {
    cands = cut_half_segments(*res.cut);
    cands.push_back(HalfSegment{sel.current.edge, node, require_position(nbhd, node)});
  } else {
    cands = node_half_segments(nbhd, node);
  }
  const HalfSegment& h = cands[first_counter_clockwise(at, back, cands, true)];
  return EdgeChangeMsg{sel.current.edge, DirectedEdgeRef{h.edge, h.toward}, at};
}

Delivery plan_delivery(NodeId node, const Neighborhood& nbhd, NodeId recipient, NodeId sender) {
  Delivery d;
  d.recipient = recipient;
  if (recipient == node) {
    d.route = {node};
    return d;
  }
  if (auto r = nbhd.route(node, recipient)) {
    d.route = std::move(*r);
    return d;
  }
  d.route = {node, sender};
  d.via_sender = true;
  return d;
}

std::vector<NodeId> relay_route(NodeId node, const Neighborhood& nbhd, NodeId recipient) {
  if (auto r = nbhd.route(node, recipient)) return std::move(*r);
  throw Error(ErrorKind::kUnroutable, "node " + std::to_string(node) + " cannot reach node " +
                                          std::to_string(recipient) + " inside its neighborhood");
}

SelectionOutcome handle_edge_selection(NodeId node, const Neighborhood& nbhd,
                                       const EdgeSelectionMsg& sel, NodeId sender,
                                       const CrossingIndex* cache) {
  SelectionOutcome out;
  out.resolution = resolve_step(node, nbhd, sel, cache);
  out.next = turn_after(node, nbhd, sel, out.resolution);
  out.delivery = plan_delivery(node, nbhd, out.next.current.back_end(), sender);
  return out;
}

std::size_t traversal_step_budget(std::size_t edge_count) {
  return 16 * (edge_count * edge_count + edge_count);
}

std::vector<BoundaryStep> traverse_void(const GeometricGraph& g, const NeighborhoodRelation& rel,
                                        const DirectedEdgeRef& start, const Point& entry,
                                        const StepVisitor& visitor, const CrossingIndex* cache,
                                        TraversalLog* log) {
  if (!g.has_edge(start.edge) || !start.edge.has(start.forward_end)) {
    throw Error(ErrorKind::kProtocol, "traversal start " + to_string(start.edge) + " is not an edge");
  }
  const Point start_back = g.position(start.back_end());
  const Point start_forward = g.position(start.forward_end);
  require_on_edge(start_back, start_forward, entry, "start point");
  const Coord start_t = directed_param(start_back, start_forward, entry);

  auto record = [&](NodeId from, NodeId to, ProtocolHop kind) {
    if (log && from != to) log->hops.push_back({from, to, kind});
  };

  std::vector<BoundaryStep> steps;
  EdgeChangeMsg msg{start.edge, start, entry};
  const std::size_t budget = traversal_step_budget(g.edge_count());
  while (true) {
    const NodeId back = msg.current.back_end();
    const NodeId forward = msg.current.forward_end;
    const EdgeSelectionMsg sel = handle_edge_change(back, rel.at(back), msg, cache);
    SelectionOutcome out = handle_edge_selection(forward, rel.at(forward), sel, back, cache);
    BoundaryStep step = out.resolution.step;

    if (!steps.empty() && step.edge == start.edge && step.forward_end == start.forward_end) {
      const Coord from_t = directed_param(start_back, start_forward, step.from);
      const Coord to_t = directed_param(start_back, start_forward, step.to);
      if (from_t <= start_t && start_t < to_t) {
        if (from_t < start_t) steps.push_back({step.from, entry, step.edge, step.forward_end});
        return steps;
      }
    }
    record(back, forward, ProtocolHop::kEdgeSelection);
    steps.push_back(step);
    if (visitor && !visitor(steps.back())) return steps;
    if (steps.size() >= budget) {
      throw Error(ErrorKind::kStepBudgetExceeded,
                  "void traversal exceeded " + std::to_string(budget) + " steps");
    }

    const Delivery& d = out.delivery;
    if (d.via_sender) {
      record(forward, back, ProtocolHop::kRelay);
      const auto route = relay_route(back, rel.at(back), d.recipient);
      for (std::size_t i = 1; i < route.size(); ++i) {
        record(route[i - 1], route[i], ProtocolHop::kRelay);
      }
    } else {
      for (std::size_t i = 1; i < d.route.size(); ++i) {
        record(d.route[i - 1], d.route[i], ProtocolHop::kEdgeChange);
      }
    }
    msg = std::move(out.next);
  }
}

std::vector<Edge> traverse_face_planar(const GeometricGraph& g_planar, const DirectedEdgeRef& start) {
  if (!g_planar.has_edge(start.edge) || !start.edge.has(start.forward_end)) {
    throw Error(ErrorKind::kProtocol, "face walk start " + to_string(start.edge) + " is not an edge");
  }
  if (!CrossingIndex(g_planar).planar()) {
    throw Error(ErrorKind::kNotPlanar, "face walk needs a graph without crossings");
  }
  std::vector<Edge> out;
  DirectedEdgeRef cur = start;
  const std::size_t cap = 2 * g_planar.edge_count() + 1;
  do {
    out.push_back(cur.edge);
    if (out.size() > cap) throw Error(ErrorKind::kStepBudgetExceeded, "face walk did not close");
    const NodeId f = cur.forward_end;
    std::vector<HalfSegment> cands;
    for (NodeId w : g_planar.neighbors(f)) cands.push_back({Edge(f, w), w, g_planar.position(w)});
    const auto& h = cands[first_counter_clockwise(g_planar.position(f),
                                                  g_planar.position(cur.back_end()), cands, true)];
    cur = DirectedEdgeRef{h.edge, h.toward};
  } while (!(cur == start));
  return out;
}

HalfSegment start_direction(const Point& at, const Point& target,
                            std::span<const HalfSegment> candidates) {
  return candidates[first_counter_clockwise(at, target, candidates, false)];
}

std::vector<HalfSegment> node_half_segments(const Neighborhood& nbhd, NodeId n) {
  std::vector<HalfSegment> out;
  for (NodeId w : nbhd.adjacent(n)) out.push_back({Edge(n, w), w, nbhd.position(w)});
  return out;
}

std::vector<std::uint8_t> serialize(const EdgeChangeMsg& msg) {
  wire::Buffer out;
  put_edge(out, msg.prev_edge);
  put_directed(out, msg.current);
  wire::put_point(out, msg.entry_point);
  return out;
}

std::vector<std::uint8_t> serialize(const EdgeSelectionMsg& msg) {
  wire::Buffer out;
  put_edge(out, msg.prev_edge);
  put_directed(out, msg.current);
  wire::put_point(out, msg.entry_point);
  wire::put_u8(out, msg.suggested ? 1 : 0);
  const Cut empty{};
  const Cut& c = msg.suggested ? *msg.suggested : empty;
  put_edge(out, c.edge);
  wire::put_point(out, c.a_pos);
  wire::put_point(out, c.b_pos);
  wire::put_point(out, c.point);
  return out;
}

}  // namespace voidroute
