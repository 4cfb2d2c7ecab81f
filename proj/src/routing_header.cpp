#include "voidroute/routing_header.h"

#include "voidroute/wire.h"

namespace voidroute {

const char* to_string(RouteMode mode) {
  switch (mode) {
    case RouteMode::kGreedy: return "GREEDY";
    case RouteMode::kVoidTraversal: return "VOID_TRAVERSAL";
    case RouteMode::kFaceTraversal: return "FACE_TRAVERSAL";
  }
  return "?";
}

const char* to_string(TransmissionKind kind) {
  switch (kind) {
    case TransmissionKind::kDataForward: return "DATA_FORWARD";
    case TransmissionKind::kEdgeChange: return "EDGE_CHANGE";
    case TransmissionKind::kEdgeSelection: return "EDGE_SELECTION";
    case TransmissionKind::kRelay: return "RELAY";
  }
  return "?";
}

void RoutingHeader::set_route(std::span<const NodeId> nodes, TransmissionKind kind) {
  if (nodes.size() > kRouteCapacity) {
    throw Error(ErrorKind::kHeaderCapacity,
                "route of " + std::to_string(nodes.size()) + " nodes exceeds the header");
  }
  route.fill(0);
  std::copy(nodes.begin(), nodes.end(), route.begin());
  route_len = static_cast<std::uint8_t>(nodes.size());
  route_pos = 0;
  route_kind = kind;
}

RoutingHeader initial_header(NodeId target, const Point& target_pos) {
  RoutingHeader h;
  h.target = target;
  h.target_pos = target_pos;
  h.local_min_dist = 0;
  return h;
}

namespace {

void put_directed(wire::Buffer& out, const DirectedEdgeRef& d) {
  wire::put_u32(out, d.edge.a);
  wire::put_u32(out, d.edge.b);
  wire::put_u32(out, d.forward_end);
}

}  // namespace

std::vector<std::uint8_t> serialize(const RoutingHeader& h) {
  wire::Buffer out;
  wire::put_u32(out, h.target);
  wire::put_point(out, h.target_pos);
  wire::put_u8(out, static_cast<std::uint8_t>(h.mode));
  wire::put_u8(out, h.started);
  wire::put_point(out, h.anchor);

  wire::put_u8(out, static_cast<std::uint8_t>(h.phase));
  const auto change = serialize(h.change);
  out.insert(out.end(), change.begin(), change.end());
  const auto sel = serialize(h.selection);
  out.insert(out.end(), sel.begin(), sel.end());

  for (NodeId n : h.route) wire::put_u32(out, n);
  wire::put_u8(out, h.route_len);
  wire::put_u8(out, h.route_pos);
  wire::put_u8(out, static_cast<std::uint8_t>(h.route_kind));

  wire::put_u8(out, static_cast<std::uint8_t>(h.lap));
  wire::put_u8(out, h.lap_moved);
  put_directed(out, h.lap_start);
  wire::put_u8(out, h.has_best);
  wire::put_point(out, h.best_point);
  put_directed(out, h.best_ref);

  wire::put_u8(out, h.has_local_min);
  wire::put_coord(out, h.local_min_dist);

  wire::put_u32(out, h.face_prev);
  wire::put_u8(out, h.face_restart);
  return out;
}

}  // namespace voidroute
