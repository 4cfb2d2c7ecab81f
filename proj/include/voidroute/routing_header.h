#pragma once

// The in-flight routing message. Every field has a fixed width on the wire,
// so the serialized size is the same at every hop of every route.

#include <array>
#include <cstdint>
#include <vector>

#include "voidroute/traversal.h"

namespace voidroute {

enum class RouteMode : std::uint8_t { kGreedy, kVoidTraversal, kFaceTraversal };

enum class TransmissionKind : std::uint8_t { kDataForward, kEdgeChange, kEdgeSelection, kRelay };

const char* to_string(RouteMode mode);
const char* to_string(TransmissionKind kind);

// Where the void-traversal handshake stands.
enum class ProtocolPhase : std::uint8_t {
  kIdle,
  kChange,     // edge_change in flight toward the back end of change.current
  kSelection,  // edge_selection in flight toward the forward end
  kReturned,   // edge_change handed back to the sender for forwarding
};

enum class LapPhase : std::uint8_t { kNone, kExploring, kSeeking };

inline constexpr std::size_t kRouteCapacity = 32;

struct RoutingHeader {
  NodeId target = 0;
  Point target_pos;
  RouteMode mode = RouteMode::kGreedy;
  bool started = false;
  Point anchor;  // p1

  ProtocolPhase phase = ProtocolPhase::kIdle;
  EdgeChangeMsg change;
  EdgeSelectionMsg selection;

  // Source route for the edge_change, filled by the node that planned it.
  std::array<NodeId, kRouteCapacity> route{};
  std::uint8_t route_len = 0;
  std::uint8_t route_pos = 0;
  TransmissionKind route_kind = TransmissionKind::kEdgeChange;

  // Full-lap bookkeeping: the lap starts on lap_start at the anchor; best is
  // the crossing of (anchor, target) nearest the target seen so far.
  LapPhase lap = LapPhase::kNone;
  bool lap_moved = false;
  DirectedEdgeRef lap_start;
  bool has_best = false;
  Point best_point;
  DirectedEdgeRef best_ref;

  // Squared distance to the target at the last local minimum.
  bool has_local_min = false;
  Coord local_min_dist;

  // Planar face walk: node the message came from, or a restart marker.
  NodeId face_prev = kNoNode;
  bool face_restart = true;

  // Throws Error(kHeaderCapacity) when a route does not fit.
  void set_route(std::span<const NodeId> nodes, TransmissionKind kind);
};

RoutingHeader initial_header(NodeId target, const Point& target_pos);

std::vector<std::uint8_t> serialize(const RoutingHeader& h);

}  // namespace voidroute
