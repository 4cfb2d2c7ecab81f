#pragma once

// Void traversal: the two-message handshake between the endpoints of the
// current edge that walks the boundary of one void of an arbitrary geometric
// graph, plus the classic right-hand face walk for planar graphs.
//
// Orientation: the void being walked is always on the right-hand side, so
// bounded voids come out clockwise and the external void counter-clockwise.
//
// Roles per edge: the back end receives edge_change, searches its
// neighborhood for the nearest cut beyond the entry point and sends
// edge_selection over the edge to the forward end. The forward end settles
// the cut against its own neighborhood, decides the turn and addresses the
// next edge_change to the back end of the next edge.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "voidroute/crossings.h"
#include "voidroute/neighborhood.h"

namespace voidroute {

struct DirectedEdgeRef {
  Edge edge;
  NodeId forward_end = 0;

  NodeId back_end() const { return edge.other(forward_end); }
  friend bool operator==(const DirectedEdgeRef&, const DirectedEdgeRef&) = default;
};

// An edge cutting the current edge, with the geometry needed to turn onto it.
struct Cut {
  Edge edge;
  Point a_pos;  // position of edge.a
  Point b_pos;  // position of edge.b
  Point point;  // where it meets the current edge

  friend bool operator==(const Cut&, const Cut&) = default;
};

struct EdgeChangeMsg {
  Edge prev_edge;
  DirectedEdgeRef current;
  Point entry_point;

  friend bool operator==(const EdgeChangeMsg&, const EdgeChangeMsg&) = default;
};

struct EdgeSelectionMsg {
  Edge prev_edge;
  DirectedEdgeRef current;
  Point entry_point;
  std::optional<Cut> suggested;

  friend bool operator==(const EdgeSelectionMsg&, const EdgeSelectionMsg&) = default;
};

// One piece of the void boundary: from -> to along `edge`, walking toward
// `forward_end`.
struct BoundaryStep {
  Point from;
  Point to;
  Edge edge;
  NodeId forward_end = 0;

  friend bool operator==(const BoundaryStep&, const BoundaryStep&) = default;
};

// Candidate outgoing direction at a point: along `edge` toward `toward`.
struct HalfSegment {
  Edge edge;
  NodeId toward = 0;
  Point toward_pos;
};

// First candidate swept counter-clockwise from `reference` around `at`. With
// `strict`, a candidate lying exactly on the reference ray counts as a full
// turn (used for the arrival rule, where that ray is the way back).
std::size_t first_counter_clockwise(const Point& at, const Point& reference,
                                    std::span<const HalfSegment> candidates, bool strict);

// Parameter of p along the directed current edge (back end 0, forward end 1).
Coord directed_param(const Point& back, const Point& forward, const Point& p);

// Nearest edge of nbhd crossing current.edge strictly between entry_point and
// the forward end. With a cache, crossings are read from it and filtered by
// membership in nbhd; the result is identical to the direct scan.
std::optional<Cut> best_cut(const Neighborhood& nbhd, const DirectedEdgeRef& current,
                            const Point& entry_point, const CrossingIndex* cache = nullptr);

// Of two cuts on the same directed edge, the one the walk meets first. Equal
// points go to the edge the right-hand turn would take.
const Cut& nearer_cut(const Point& back, const Point& forward, const Cut& x, const Cut& y);

// Run at the back end of msg.current. Throws Error(kProtocol) otherwise.
EdgeSelectionMsg handle_edge_change(NodeId node, const Neighborhood& nbhd, const EdgeChangeMsg& msg,
                                    const CrossingIndex* cache = nullptr);

// The forward end's view of the boundary step: where the walk along the
// current edge stops and which cut (if any) stops it.
struct StepResolution {
  BoundaryStep step;
  std::optional<Cut> cut;
};

// Run at the forward end of sel.current. Throws Error(kProtocol) otherwise.
StepResolution resolve_step(NodeId node, const Neighborhood& nbhd, const EdgeSelectionMsg& sel,
                            const CrossingIndex* cache = nullptr);

// Right-hand turn at the end of a resolved step.
EdgeChangeMsg turn_after(NodeId node, const Neighborhood& nbhd, const EdgeSelectionMsg& sel,
                         const StepResolution& res);

// How the next edge_change reaches its recipient (the back end of its
// current edge). Either a route inside the decider's neighborhood or, when
// that fails, a hop back to the sender which then routes from its own.
struct Delivery {
  NodeId recipient = 0;
  std::vector<NodeId> route;  // starts at the decider; size 1 means local
  bool via_sender = false;    // route is {decider, sender}; sender resolves the rest
};

Delivery plan_delivery(NodeId node, const Neighborhood& nbhd, NodeId recipient, NodeId sender);

// At the sender after a returned message. Throws Error(kUnroutable).
std::vector<NodeId> relay_route(NodeId node, const Neighborhood& nbhd, NodeId recipient);

struct SelectionOutcome {
  StepResolution resolution;
  EdgeChangeMsg next;
  Delivery delivery;
};

// resolve_step + turn_after + plan_delivery. `sender` is the back end that
// sent the selection.
SelectionOutcome handle_edge_selection(NodeId node, const Neighborhood& nbhd,
                                       const EdgeSelectionMsg& sel, NodeId sender,
                                       const CrossingIndex* cache = nullptr);

enum class ProtocolHop { kEdgeChange, kEdgeSelection, kRelay };

struct TraversalHop {
  NodeId from = 0;
  NodeId to = 0;
  ProtocolHop kind = ProtocolHop::kEdgeChange;
};

struct TraversalLog {
  std::vector<TraversalHop> hops;
};

// Return false to stop the walk after this step.
using StepVisitor = std::function<bool(const BoundaryStep&)>;

// Safety cap on boundary steps for a graph with m edges: 16 (m^2 + m).
std::size_t traversal_step_budget(std::size_t edge_count);

// Walks one void starting along `start` at `entry` (a point of start.edge)
// until the walk is back at the start or the visitor stops it. The graph must
// be in general position and every N(u) must hold u's own edges.
// Throws Error(kUnroutable), Error(kStepBudgetExceeded), Error(kProtocol).
std::vector<BoundaryStep> traverse_void(const GeometricGraph& g, const NeighborhoodRelation& rel,
                                        const DirectedEdgeRef& start, const Point& entry,
                                        const StepVisitor& visitor = {},
                                        const CrossingIndex* cache = nullptr,
                                        TraversalLog* log = nullptr);

// Right-hand face walk: at each vertex leave by the first edge
// counter-clockwise from the way back. Ends on return to `start`.
// Throws Error(kNotPlanar) when two edges cross.
std::vector<Edge> traverse_face_planar(const GeometricGraph& g_planar, const DirectedEdgeRef& start);

// First step of a walk on the void entered by the ray from `at` toward
// `target`: the first candidate counter-clockwise from that ray (a candidate
// on the ray itself is taken).
HalfSegment start_direction(const Point& at, const Point& target,
                            std::span<const HalfSegment> candidates);

// Half-segments leaving node `n`, from its edges in nbhd.
std::vector<HalfSegment> node_half_segments(const Neighborhood& nbhd, NodeId n);

// Fixed-width wire images; sizes do not depend on the graph.
std::vector<std::uint8_t> serialize(const EdgeChangeMsg& msg);
std::vector<std::uint8_t> serialize(const EdgeSelectionMsg& msg);

}  // namespace voidroute
