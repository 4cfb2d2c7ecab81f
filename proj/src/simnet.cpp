#include "voidroute/simnet.h"

#include <algorithm>
#include <ostream>

#include "json.hpp"

namespace voidroute {

const char* to_string(FailureKind kind) {
  switch (kind) {
    case FailureKind::kNone: return "None";
    case FailureKind::kBudgetExceeded: return "BudgetExceeded";
    case FailureKind::kNonNeighborSend: return "NonNeighborSend";
    case FailureKind::kLocalMinimum: return "LocalMinimum";
    case FailureKind::kIsolated: return "Isolated";
    case FailureKind::kUnroutable: return "Unroutable";
    case FailureKind::kProtocol: return "ProtocolError";
    case FailureKind::kStepBudgetExceeded: return "StepBudgetExceeded";
    case FailureKind::kHeaderCapacity: return "HeaderCapacity";
  }
  return "?";
}

void StepContext::mode(RouteMode m) {
  if (!trace_.mode_log.empty() && trace_.mode_log.back().mode == m) return;
  trace_.mode_log.push_back({m, trace_.transmissions.size()});
}

std::size_t default_budget(std::size_t node_count) { return 50 * node_count; }

namespace {

FailureKind failure_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnroutable:
    case ErrorKind::kClosureViolation: return FailureKind::kUnroutable;
    case ErrorKind::kStepBudgetExceeded: return FailureKind::kStepBudgetExceeded;
    case ErrorKind::kIsolated: return FailureKind::kIsolated;
    case ErrorKind::kHeaderCapacity: return FailureKind::kHeaderCapacity;
    default: return FailureKind::kProtocol;
  }
}

void note_header(RouteTrace& trace, const RoutingHeader& h) {
  const std::size_t bytes = serialize(h).size();
  if (trace.header_bytes_max == 0) {
    trace.header_bytes_min = trace.header_bytes_max = bytes;
    return;
  }
  trace.header_bytes_min = std::min(trace.header_bytes_min, bytes);
  trace.header_bytes_max = std::max(trace.header_bytes_max, bytes);
}

}  // namespace

RouteTrace simulate(const GeometricGraph& g, const NeighborhoodRelation& rel, const Strategy& strategy,
                    NodeId s, NodeId t, const RunOptions& options) {
  if (s == t) throw Error(ErrorKind::kProtocol, "source equals target");
  if (s >= g.node_count() || t >= g.node_count()) {
    throw Error(ErrorKind::kProtocol, "source or target out of range");
  }
  const std::size_t budget = options.budget ? options.budget : default_budget(g.node_count());

  RouteTrace trace;
  trace.algorithm = strategy.name();
  trace.source = s;
  trace.target = t;
  trace.target_pos = g.position(t);
  StepContext ctx(trace);
  RoutingHeader header = initial_header(t, g.position(t));

  auto finish = [&](NodeId at) {
    trace.final_node = at;
    trace.hop_count_all = trace.transmissions.size();
    trace.hop_count_data = static_cast<std::size_t>(
        std::count_if(trace.transmissions.begin(), trace.transmissions.end(),
                      [](const Transmission& x) { return x.kind == TransmissionKind::kDataForward; }));
    return trace;
  };
  auto fail = [&](NodeId at, FailureKind kind, std::string why) {
    trace.failure = kind;
    trace.failure_detail = std::move(why);
    return finish(at);
  };

  NodeId node = s;
  while (true) {
    if (node == t) {
      trace.delivered = true;
      return finish(node);
    }
    Action action;
    try {
      action = strategy.on_message(node, rel.at(node), header, ctx);
      note_header(trace, header);
    } catch (const Error& e) {
      return fail(node, failure_for(e.kind()), e.what());
    }
    switch (action.kind) {
      case Action::Kind::kDeliver:
        return fail(node, FailureKind::kProtocol, "delivery claimed away from the target");
      case Action::Kind::kFail:
        return fail(node, action.failure, action.detail);
      case Action::Kind::kSend:
        break;
    }
    if (!g.has_edge(Edge(node, action.to)) || node == action.to) {
      return fail(node, FailureKind::kNonNeighborSend,
                  "node " + std::to_string(node) + " addressed non-neighbor " + std::to_string(action.to));
    }
    if (trace.transmissions.size() >= budget) {
      return fail(node, FailureKind::kBudgetExceeded,
                  "transmission budget " + std::to_string(budget) + " exhausted");
    }
    trace.transmissions.push_back({node, action.to, action.transmission, trace.transmissions.size()});
    node = action.to;
  }
}

MemoryReport memory_report(const NeighborhoodRelation& rel) {
  MemoryReport r;
  for (const auto& n : rel.per_node) r.per_node.push_back(n.node_count());
  r.average = avg_neighborhood_size(rel);
  return r;
}

std::size_t hop_count(const RouteTrace& trace, HopMetric metric) {
  return metric == HopMetric::kAll ? trace.hop_count_all : trace.hop_count_data;
}

double improvement(const RouteTrace& face_trace, const RouteTrace& void_trace, HopMetric metric) {
  if (!face_trace.delivered || !void_trace.delivered) {
    throw Error(ErrorKind::kProtocol, "improvement needs two delivered traces");
  }
  if (face_trace.source != void_trace.source || face_trace.target != void_trace.target) {
    throw Error(ErrorKind::kProtocol, "improvement needs traces for the same pair");
  }
  const double face = static_cast<double>(hop_count(face_trace, metric));
  const double vd = static_cast<double>(hop_count(void_trace, metric));
  if (face == 0) throw Error(ErrorKind::kUndefined, "face route has no hops");
  return (face - vd) / face;
}

void write_trace_text(std::ostream& out, const RouteTrace& trace) {
  out << "# " << trace.algorithm << " " << trace.source << " -> " << trace.target << " "
      << (trace.delivered ? "delivered" : "failed") << " hops_all=" << trace.hop_count_all
      << " hops_data=" << trace.hop_count_data;
  if (trace.failure != FailureKind::kNone) out << " failure=" << to_string(trace.failure);
  out << "\n";
  for (const auto& x : trace.transmissions) {
    out << x.seq << " " << x.from << " " << x.to << " " << to_string(x.kind) << "\n";
  }
}

namespace {

using nlohmann::json;

json point_json(const Point& p) { return json::array({format_coord(p.x), format_coord(p.y)}); }

Point point_from(const json& j) {
  return {parse_coord(j.at(0).get<std::string>()), parse_coord(j.at(1).get<std::string>())};
}

template <typename Enum, std::size_t N>
Enum enum_from(const std::string& text, const Enum (&values)[N]) {
  for (Enum v : values) {
    if (text == to_string(v)) return v;
  }
  throw Error(ErrorKind::kParse, "unknown enum value '" + text + "'");
}

constexpr TransmissionKind kKinds[] = {TransmissionKind::kDataForward, TransmissionKind::kEdgeChange,
                                       TransmissionKind::kEdgeSelection, TransmissionKind::kRelay};
constexpr RouteMode kModes[] = {RouteMode::kGreedy, RouteMode::kVoidTraversal,
                                RouteMode::kFaceTraversal};
constexpr FailureKind kFailures[] = {
    FailureKind::kNone,          FailureKind::kBudgetExceeded, FailureKind::kNonNeighborSend,
    FailureKind::kLocalMinimum,  FailureKind::kIsolated,       FailureKind::kUnroutable,
    FailureKind::kProtocol,      FailureKind::kStepBudgetExceeded, FailureKind::kHeaderCapacity};

}  // namespace

std::string trace_to_json(const RouteTrace& trace) {
  json j;
  j["algorithm"] = trace.algorithm;
  j["source"] = trace.source;
  j["target"] = trace.target;
  j["target_pos"] = point_json(trace.target_pos);
  j["delivered"] = trace.delivered;
  j["hop_count_all"] = trace.hop_count_all;
  j["hop_count_data"] = trace.hop_count_data;
  j["failure"] = to_string(trace.failure);
  j["failure_detail"] = trace.failure_detail;
  j["final_node"] = trace.final_node;
  j["header_bytes_min"] = trace.header_bytes_min;
  j["header_bytes_max"] = trace.header_bytes_max;
  json tx = json::array();
  for (const auto& x : trace.transmissions) {
    tx.push_back({{"seq", x.seq}, {"from", x.from}, {"to", x.to}, {"kind", to_string(x.kind)}});
  }
  j["transmissions"] = tx;
  json anchors = json::array();
  for (const auto& p : trace.anchors) anchors.push_back(point_json(p));
  j["anchors"] = anchors;
  json modes = json::array();
  for (const auto& m : trace.mode_log) modes.push_back({{"mode", to_string(m.mode)}, {"at", m.at}});
  j["mode_log"] = modes;
  return j.dump(2);
}

RouteTrace trace_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("trace document: ") + e.what());
  }
  try {
    RouteTrace t;
    t.algorithm = j.at("algorithm").get<std::string>();
    t.source = j.at("source").get<NodeId>();
    t.target = j.at("target").get<NodeId>();
    t.target_pos = point_from(j.at("target_pos"));
    t.delivered = j.at("delivered").get<bool>();
    t.hop_count_all = j.at("hop_count_all").get<std::size_t>();
    t.hop_count_data = j.at("hop_count_data").get<std::size_t>();
    t.failure = enum_from(j.at("failure").get<std::string>(), kFailures);
    t.failure_detail = j.at("failure_detail").get<std::string>();
    t.final_node = j.at("final_node").get<NodeId>();
    t.header_bytes_min = j.at("header_bytes_min").get<std::size_t>();
    t.header_bytes_max = j.at("header_bytes_max").get<std::size_t>();
    for (const auto& x : j.at("transmissions")) {
      t.transmissions.push_back({x.at("from").get<NodeId>(), x.at("to").get<NodeId>(),
                                 enum_from(x.at("kind").get<std::string>(), kKinds),
                                 x.at("seq").get<std::size_t>()});
    }
    for (const auto& p : j.at("anchors")) t.anchors.push_back(point_from(p));
    for (const auto& m : j.at("mode_log")) {
      t.mode_log.push_back({enum_from(m.at("mode").get<std::string>(), kModes), m.at("at").get<std::size_t>()});
    }
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("trace document: ") + e.what());
  }
}

}  // namespace voidroute
