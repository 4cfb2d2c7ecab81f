#include "voidroute/routing.h"

#include <algorithm>

namespace voidroute {

std::variant<NodeId, LocalMinimumReport> greedy_step(NodeId node, const Neighborhood& nbhd,
                                                     const Point& target) {
  const auto adj = nbhd.adjacent(node);
  if (adj.empty()) throw Error(ErrorKind::kIsolated, "node " + std::to_string(node) + " has no neighbors");
  const Coord here = euclid_dist_sq(nbhd.position(node), target);
  NodeId best = adj.front();
  Coord best_d = euclid_dist_sq(nbhd.position(best), target);
  for (NodeId v : adj.subspan(1)) {
    Coord d = euclid_dist_sq(nbhd.position(v), target);
    if (d < best_d) best = v, best_d = std::move(d);
  }
  if (best_d < here) return best;
  return LocalMinimumReport{node, here};
}

NodeId compass_step(NodeId node, const Neighborhood& nbhd, const Point& target) {
  const auto adj = nbhd.adjacent(node);
  if (adj.empty()) throw Error(ErrorKind::kIsolated, "node " + std::to_string(node) + " has no neighbors");
  const Point& p = nbhd.position(node);
  const Point dir = target - p;
  NodeId best = adj.front();
  for (NodeId v : adj.subspan(1)) {
    if (compare_deviation(dir, nbhd.position(v) - p, nbhd.position(best) - p) < 0) best = v;
  }
  return best;
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kGreedy: return "greedy";
    case Algorithm::kCompass: return "compass";
    case Algorithm::kVoid1: return "void1";
    case Algorithm::kVoid2: return "void2";
    case Algorithm::kGvg: return "gvg";
    case Algorithm::kFace2: return "face2";
    case Algorithm::kGfg: return "gfg";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::kGreedy, Algorithm::kCompass, Algorithm::kVoid1, Algorithm::kVoid2,
                      Algorithm::kGvg, Algorithm::kFace2, Algorithm::kGfg}) {
    if (name == to_string(a)) return a;
  }
  return std::nullopt;
}

std::optional<Point> baseline_hit(const Point& from, const Point& to, const Point& anchor,
                                  const Point& target) {
  const auto hit = segment_intersection(Segment{from, to}, Segment{anchor, target});
  std::optional<Point> q;
  if (const auto* c = std::get_if<PointContact>(&hit)) {
    q = c->point;
  } else if (const auto* o = std::get_if<OverlapInterval>(&hit)) {
    q = euclid_dist_sq(o->from, target) <= euclid_dist_sq(o->to, target) ? o->from : o->to;
  }
  if (!q || *q == from || *q == anchor) return std::nullopt;
  return q;
}

namespace {

constexpr int kLocalGuard = 16;

Action send(RoutingHeader& h, std::size_t index, TransmissionKind kind) {
  h.route_pos = static_cast<std::uint8_t>(index);
  return Action::send(h.route[index], kind);
}

class GreedyStrategy final : public Strategy {
 public:
  std::string name() const override { return "greedy"; }
  Action on_message(NodeId node, const Neighborhood& nbhd, RoutingHeader& h,
                    StepContext& ctx) const override {
    if (!h.started) {
      h.started = true;
      ctx.mode(RouteMode::kGreedy);
    }
    auto r = greedy_step(node, nbhd, h.target_pos);
    if (auto* next = std::get_if<NodeId>(&r)) return Action::send(*next, TransmissionKind::kDataForward);
    return Action::fail(FailureKind::kLocalMinimum, "local minimum at node " + std::to_string(node));
  }
};

class CompassStrategy final : public Strategy {
 public:
  std::string name() const override { return "compass"; }
  Action on_message(NodeId node, const Neighborhood& nbhd, RoutingHeader& h,
                    StepContext& ctx) const override {
    if (!h.started) {
      h.started = true;
      ctx.mode(RouteMode::kGreedy);
    }
    return Action::send(compass_step(node, nbhd, h.target_pos), TransmissionKind::kDataForward);
  }
};

// Void walks for VOID-1, VOID-2 and the fallback phase of GVG.
class VoidStrategy final : public Strategy {
 public:
  VoidStrategy(VoidVariant variant, bool greedy_first, const CrossingIndex* cache)
      : variant_(variant), greedy_first_(greedy_first), cache_(cache) {}

  std::string name() const override {
    if (greedy_first_) return variant_ == VoidVariant::kVoid1 ? "gvg-void1" : "gvg";
    return variant_ == VoidVariant::kVoid1 ? "void1" : "void2";
  }

  Action on_message(NodeId node, const Neighborhood& nbhd, RoutingHeader& h,
                    StepContext& ctx) const override {
    if (!h.started) {
      h.started = true;
      if (greedy_first_) {
        h.mode = RouteMode::kGreedy;
        ctx.mode(RouteMode::kGreedy);
      } else {
        begin_void(node, nbhd, h, ctx);
      }
    }
    for (int guard = 0; guard < kLocalGuard; ++guard) {
      if (greedy_first_ && h.mode == RouteMode::kVoidTraversal &&
          euclid_dist_sq(nbhd.position(node), h.target_pos) < h.local_min_dist) {
        h.mode = RouteMode::kGreedy;
        h.phase = ProtocolPhase::kIdle;
        h.lap = LapPhase::kNone;
        ctx.mode(RouteMode::kGreedy);
      }
      if (h.mode == RouteMode::kGreedy) {
        auto r = greedy_step(node, nbhd, h.target_pos);
        if (auto* next = std::get_if<NodeId>(&r)) return Action::send(*next, TransmissionKind::kDataForward);
        h.has_local_min = true;
        h.local_min_dist = std::get<LocalMinimumReport>(r).dist_to_target;
        begin_void(node, nbhd, h, ctx);
        continue;
      }

      switch (h.phase) {
        case ProtocolPhase::kChange: {
          if (node != h.change.current.back_end()) {
            const std::size_t at = h.route_pos;
            if (at + 1 >= h.route_len || h.route[at] != node) {
              throw Error(ErrorKind::kProtocol, "edge_change off its route at node " + std::to_string(node));
            }
            return send(h, at + 1, h.route_kind);
          }
          h.selection = handle_edge_change(node, nbhd, h.change, cache_);
          h.phase = ProtocolPhase::kSelection;
          return Action::send(h.selection.current.forward_end, TransmissionKind::kEdgeSelection);
        }
        case ProtocolPhase::kSelection: {
          const NodeId sender = h.selection.current.back_end();
          SelectionOutcome out = handle_edge_selection(node, nbhd, h.selection, sender, cache_);
          if (auto next = control(node, nbhd, h, out.resolution, ctx)) {
            out.next = std::move(*next);
            out.delivery = plan_delivery(node, nbhd, out.next.current.back_end(), sender);
          }
          h.change = std::move(out.next);
          if (out.delivery.via_sender) {
            h.phase = ProtocolPhase::kReturned;
            h.set_route(out.delivery.route, TransmissionKind::kRelay);
            return send(h, 1, TransmissionKind::kRelay);
          }
          h.phase = ProtocolPhase::kChange;
          h.set_route(out.delivery.route, TransmissionKind::kEdgeChange);
          if (h.route_len == 1) continue;
          return send(h, 1, TransmissionKind::kEdgeChange);
        }
        case ProtocolPhase::kReturned: {
          const auto r = relay_route(node, nbhd, h.change.current.back_end());
          h.phase = ProtocolPhase::kChange;
          h.set_route(r, TransmissionKind::kRelay);
          if (h.route_len == 1) continue;
          return send(h, 1, TransmissionKind::kRelay);
        }
        case ProtocolPhase::kIdle:
          throw Error(ErrorKind::kProtocol, "void walk without a pending message");
      }
    }
    throw Error(ErrorKind::kProtocol, "no transmission after repeated local processing");
  }

 private:
  void begin_void(NodeId node, const Neighborhood& nbhd, RoutingHeader& h, StepContext& ctx) const {
    h.mode = RouteMode::kVoidTraversal;
    ctx.mode(RouteMode::kVoidTraversal);
    const Point& at = nbhd.position(node);
    const auto cands = node_half_segments(nbhd, node);
    if (cands.empty()) throw Error(ErrorKind::kIsolated, "node " + std::to_string(node) + " has no edges");
    const HalfSegment first = start_direction(at, h.target_pos, cands);
    start_walk(h, at, first, first.edge, ctx);
    h.phase = ProtocolPhase::kChange;
    h.set_route(std::vector<NodeId>{node}, TransmissionKind::kEdgeChange);
  }

  // Sets the anchor and the first edge of a walk on the void entered at `at`.
  void start_walk(RoutingHeader& h, const Point& at, const HalfSegment& first, const Edge& prev,
                  StepContext& ctx) const {
    h.anchor = at;
    ctx.anchor(at);
    h.change = EdgeChangeMsg{prev, DirectedEdgeRef{first.edge, first.toward}, at};
    if (variant_ == VoidVariant::kVoid1) {
      h.lap = LapPhase::kExploring;
      h.lap_moved = false;
      h.lap_start = h.change.current;
      h.has_best = false;
    }
  }

  // Candidate continuations at switch point p on the resolved step.
  static std::vector<HalfSegment> switch_candidates(NodeId node, const Neighborhood& nbhd,
                                                    const EdgeSelectionMsg& sel,
                                                    const StepResolution& res, const Point& p) {
    if (p == nbhd.position(node)) return node_half_segments(nbhd, node);
    const Edge& e = sel.current.edge;
    std::vector<HalfSegment> cands = {{e, e.a, nbhd.position(e.a)}, {e, e.b, nbhd.position(e.b)}};
    if (res.cut && p == res.cut->point) {
      cands.push_back({res.cut->edge, res.cut->edge.a, res.cut->a_pos});
      cands.push_back({res.cut->edge, res.cut->edge.b, res.cut->b_pos});
    }
    return cands;
  }

  // Runs at the forward end after each boundary step. Returns the edge_change
  // that replaces the natural continuation when the walk switches voids.
  std::optional<EdgeChangeMsg> control(NodeId node, const Neighborhood& nbhd, RoutingHeader& h,
                                       const StepResolution& res, StepContext& ctx) const {
    const BoundaryStep& step = res.step;
    std::optional<Point> p3;
    if (variant_ == VoidVariant::kVoid2) {
      p3 = baseline_hit(step.from, step.to, h.anchor, h.target_pos);
    } else {
      p3 = lap_control(nbhd, h, step);
    }
    if (!p3) return std::nullopt;
    const auto cands = switch_candidates(node, nbhd, h.selection, res, *p3);
    const HalfSegment first = start_direction(*p3, h.target_pos, cands);
    start_walk(h, *p3, first, step.edge, ctx);
    return h.change;
  }

  std::optional<Point> lap_control(const Neighborhood& nbhd, RoutingHeader& h,
                                   const BoundaryStep& step) const {
    const DirectedEdgeRef here{step.edge, step.forward_end};
    if (h.lap == LapPhase::kExploring) {
      bool closed = false;
      if (h.lap_moved && here == h.lap_start) {
        const Point b = nbhd.position(here.back_end());
        const Point f = nbhd.position(here.forward_end);
        const Coord a_t = directed_param(b, f, h.anchor);
        closed = directed_param(b, f, step.from) <= a_t && a_t < directed_param(b, f, step.to);
      }
      h.lap_moved = true;
      if (!closed) {
        if (auto q = baseline_hit(step.from, step.to, h.anchor, h.target_pos)) {
          if (!h.has_best || euclid_dist_sq(*q, h.target_pos) < euclid_dist_sq(h.best_point, h.target_pos)) {
            h.has_best = true;
            h.best_point = *q;
            h.best_ref = here;
          }
        }
        return std::nullopt;
      }
      if (!h.has_best) throw Error(ErrorKind::kUnroutable, "void boundary never meets the baseline");
      h.lap = LapPhase::kSeeking;
    }
    if (h.lap == LapPhase::kSeeking && here == h.best_ref && h.best_point != step.from &&
        on_segment(Segment{step.from, step.to}, h.best_point)) {
      return h.best_point;
    }
    return std::nullopt;
  }

  VoidVariant variant_;
  bool greedy_first_;
  const CrossingIndex* cache_;
};

// Face walks on a planar graph with one-hop knowledge. With greedy_first the
// node restricts itself to the Gabriel edges it can certify locally.
class FaceStrategy final : public Strategy {
 public:
  explicit FaceStrategy(bool greedy_first) : greedy_first_(greedy_first) {}

  std::string name() const override { return greedy_first_ ? "gfg" : "face2"; }

  Action on_message(NodeId node, const Neighborhood& nbhd, RoutingHeader& h,
                    StepContext& ctx) const override {
    const Point& pu = nbhd.position(node);
    if (!h.started) {
      h.started = true;
      if (greedy_first_) {
        h.mode = RouteMode::kGreedy;
        ctx.mode(RouteMode::kGreedy);
      } else {
        begin_face(pu, h, ctx);
      }
    }
    if (greedy_first_ && h.mode == RouteMode::kFaceTraversal &&
        euclid_dist_sq(pu, h.target_pos) < h.local_min_dist) {
      h.mode = RouteMode::kGreedy;
      ctx.mode(RouteMode::kGreedy);
    }
    if (h.mode == RouteMode::kGreedy) {
      auto r = greedy_step(node, nbhd, h.target_pos);
      if (auto* next = std::get_if<NodeId>(&r)) return Action::send(*next, TransmissionKind::kDataForward);
      h.has_local_min = true;
      h.local_min_dist = std::get<LocalMinimumReport>(r).dist_to_target;
      begin_face(pu, h, ctx);
    }

    std::vector<HalfSegment> cands;
    for (NodeId v : face_neighbors(node, nbhd)) cands.push_back({Edge(node, v), v, nbhd.position(v)});
    if (cands.empty()) throw Error(ErrorKind::kIsolated, "node " + std::to_string(node) + " has no face edges");
    std::size_t idx = h.face_restart ? first_counter_clockwise(pu, h.target_pos, cands, false)
                                     : first_counter_clockwise(pu, nbhd.position(h.face_prev), cands, true);
    for (std::size_t guard = 0; guard <= 2 * cands.size() + 2; ++guard) {
      const HalfSegment& c = cands[idx];
      auto q = baseline_hit(pu, c.toward_pos, h.anchor, h.target_pos);
      h.face_prev = node;
      if (!q) {
        h.face_restart = false;
        return Action::send(c.toward, TransmissionKind::kDataForward);
      }
      h.anchor = *q;
      ctx.anchor(*q);
      if (*q == c.toward_pos) {
        h.face_restart = true;
        return Action::send(c.toward, TransmissionKind::kDataForward);
      }
      const HalfSegment both[] = {{c.edge, node, pu}, c};
      if (first_counter_clockwise(*q, h.target_pos, both, false) == 1) {
        h.face_restart = false;
        return Action::send(c.toward, TransmissionKind::kDataForward);
      }
      idx = first_counter_clockwise(pu, c.toward_pos, cands, true);
    }
    throw Error(ErrorKind::kProtocol, "face walk made no progress at node " + std::to_string(node));
  }

 private:
  void begin_face(const Point& at, RoutingHeader& h, StepContext& ctx) const {
    h.mode = RouteMode::kFaceTraversal;
    ctx.mode(RouteMode::kFaceTraversal);
    h.anchor = at;
    ctx.anchor(at);
    h.face_restart = true;
    h.face_prev = kNoNode;
  }

  std::vector<NodeId> face_neighbors(NodeId node, const Neighborhood& nbhd) const {
    const auto adj = nbhd.adjacent(node);
    if (!greedy_first_) return {adj.begin(), adj.end()};
    const Point& pu = nbhd.position(node);
    std::vector<NodeId> out;
    for (NodeId v : adj) {
      const Point& pv = nbhd.position(v);
      bool gabriel = true;
      for (NodeId w : nbhd.nodes()) {
        if (w == node || w == v) continue;
        const Point& pw = nbhd.position(w);
        if (sgn(dot(pu - pw, pv - pw)) < 0) {
          gabriel = false;
          break;
        }
      }
      if (gabriel) out.push_back(v);
    }
    return out;
  }

  bool greedy_first_;
};

RouteTrace run_planar(const GeometricGraph& g, bool greedy_first, NodeId s, NodeId t,
                      const RunOptions& opts) {
  FaceStrategy strategy(greedy_first);
  return simulate(g, build_khop(g, 1), strategy, s, t, opts);
}

}  // namespace

std::unique_ptr<Strategy> make_strategy(Algorithm a, const CrossingIndex* cache, VoidVariant gvg_variant) {
  switch (a) {
    case Algorithm::kGreedy: return std::make_unique<GreedyStrategy>();
    case Algorithm::kCompass: return std::make_unique<CompassStrategy>();
    case Algorithm::kVoid1: return std::make_unique<VoidStrategy>(VoidVariant::kVoid1, false, cache);
    case Algorithm::kVoid2: return std::make_unique<VoidStrategy>(VoidVariant::kVoid2, false, cache);
    case Algorithm::kGvg: return std::make_unique<VoidStrategy>(gvg_variant, true, cache);
    case Algorithm::kFace2: return std::make_unique<FaceStrategy>(false);
    case Algorithm::kGfg: return std::make_unique<FaceStrategy>(true);
  }
  throw Error(ErrorKind::kProtocol, "unknown algorithm");
}

RouteTrace route_greedy(const GeometricGraph& g, NodeId s, NodeId t, const RunOptions& opts) {
  return simulate(g, build_khop(g, 1), GreedyStrategy(), s, t, opts);
}

RouteTrace route_compass(const GeometricGraph& g, NodeId s, NodeId t, const RunOptions& opts) {
  return simulate(g, build_khop(g, 1), CompassStrategy(), s, t, opts);
}

RouteTrace route_void1(const GeometricGraph& g, const NeighborhoodRelation& rel, NodeId s, NodeId t,
                       const RunOptions& opts, const CrossingIndex* cache) {
  return simulate(g, rel, VoidStrategy(VoidVariant::kVoid1, false, cache), s, t, opts);
}

RouteTrace route_void2(const GeometricGraph& g, const NeighborhoodRelation& rel, NodeId s, NodeId t,
                       const RunOptions& opts, const CrossingIndex* cache) {
  return simulate(g, rel, VoidStrategy(VoidVariant::kVoid2, false, cache), s, t, opts);
}

RouteTrace route_gvg(const GeometricGraph& g, const NeighborhoodRelation& rel, NodeId s, NodeId t,
                     VoidVariant variant, const RunOptions& opts, const CrossingIndex* cache) {
  return simulate(g, rel, VoidStrategy(variant, true, cache), s, t, opts);
}

RouteTrace route_face2(const GeometricGraph& g_planar, NodeId s, NodeId t, const RunOptions& opts) {
  if (!CrossingIndex(g_planar).planar()) throw Error(ErrorKind::kNotPlanar, "FACE-2 needs a planar graph");
  return run_planar(g_planar, false, s, t, opts);
}

RouteTrace route_gfg(const GeometricGraph& g_unitdisk, NodeId s, NodeId t, const RunOptions& opts) {
  return run_planar(g_unitdisk, true, s, t, opts);
}

std::optional<std::size_t> crossing_progress_check(const RouteTrace& trace) {
  for (std::size_t i = 1; i < trace.anchors.size(); ++i) {
    if (!(euclid_dist_sq(trace.anchors[i], trace.target_pos) <
          euclid_dist_sq(trace.anchors[i - 1], trace.target_pos))) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace voidroute
