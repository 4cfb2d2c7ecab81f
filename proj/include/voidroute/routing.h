#pragma once

// Routing strategies as node-local handlers for the simulator, and
// convenience wrappers that run one route end to end.
//
// VOID-2 walks the void that the segment (p1, t) enters at p1 and switches at
// the first boundary point met on that segment. VOID-1 walks the whole void
// first and switches at the crossing nearest t. GVG runs greedy forwarding and
// falls back to a void walk at a local minimum until it reaches a node closer
// to t than that minimum. FACE-2 and GFG are the planar counterparts on the
// Gabriel subgraph.

#include <memory>
#include <optional>
#include <string_view>
#include <variant>

#include "voidroute/simnet.h"

namespace voidroute {

struct LocalMinimumReport {
  NodeId node = 0;
  Coord dist_to_target;  // squared
};

// Neighbor strictly closest to target (ties to the smaller id), or a local
// minimum report. Throws Error(kIsolated).
std::variant<NodeId, LocalMinimumReport> greedy_step(NodeId node, const Neighborhood& nbhd,
                                                     const Point& target);

// Neighbor with the smallest angle to the target direction (ties to the
// smaller id). Throws Error(kIsolated).
NodeId compass_step(NodeId node, const Neighborhood& nbhd, const Point& target);

enum class Algorithm { kGreedy, kCompass, kVoid1, kVoid2, kGvg, kFace2, kGfg };
enum class VoidVariant { kVoid1, kVoid2 };

const char* to_string(Algorithm a);
std::optional<Algorithm> parse_algorithm(std::string_view name);

// Planar algorithms expect the planar graph (FACE-2) or the unit-disk graph
// (GFG) together with a one-hop relation.
std::unique_ptr<Strategy> make_strategy(Algorithm a, const CrossingIndex* cache = nullptr,
                                        VoidVariant gvg_variant = VoidVariant::kVoid2);

// First point after `from` of segment [from, to] that lies on segment
// [anchor, target], other than the anchor. On a collinear overlap the point
// nearest the target is used.
std::optional<Point> baseline_hit(const Point& from, const Point& to, const Point& anchor,
                                  const Point& target);

RouteTrace route_greedy(const GeometricGraph& g, NodeId s, NodeId t, const RunOptions& opts = {});
RouteTrace route_compass(const GeometricGraph& g, NodeId s, NodeId t, const RunOptions& opts = {});
RouteTrace route_void1(const GeometricGraph& g, const NeighborhoodRelation& rel, NodeId s, NodeId t,
                       const RunOptions& opts = {}, const CrossingIndex* cache = nullptr);
RouteTrace route_void2(const GeometricGraph& g, const NeighborhoodRelation& rel, NodeId s, NodeId t,
                       const RunOptions& opts = {}, const CrossingIndex* cache = nullptr);
RouteTrace route_gvg(const GeometricGraph& g, const NeighborhoodRelation& rel, NodeId s, NodeId t,
                     VoidVariant variant = VoidVariant::kVoid2, const RunOptions& opts = {},
                     const CrossingIndex* cache = nullptr);
// Throws Error(kNotPlanar).
RouteTrace route_face2(const GeometricGraph& g_planar, NodeId s, NodeId t, const RunOptions& opts = {});
RouteTrace route_gfg(const GeometricGraph& g_unitdisk, NodeId s, NodeId t, const RunOptions& opts = {});

// Index of the first anchor that is not strictly closer to the target than
// the one before it; empty when the sequence is strictly decreasing.
std::optional<std::size_t> crossing_progress_check(const RouteTrace& trace);

}  // namespace voidroute
