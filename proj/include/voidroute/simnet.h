#pragma once

// Hop-by-hop message simulator. A strategy sees only (node, N(node), header)
// and answers with one of: send to a neighbor, deliver, fail. The simulator
// checks every send against G, meters transmissions and records the trace.

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "voidroute/routing_header.h"

namespace voidroute {

struct Transmission {
  NodeId from = 0;
  NodeId to = 0;
  TransmissionKind kind = TransmissionKind::kDataForward;
  std::size_t seq = 0;

  friend bool operator==(const Transmission&, const Transmission&) = default;
};

enum class FailureKind {
  kNone,
  kBudgetExceeded,
  kNonNeighborSend,
  kLocalMinimum,
  kIsolated,
  kUnroutable,
  kProtocol,
  kStepBudgetExceeded,
  kHeaderCapacity,
};

const char* to_string(FailureKind kind);

struct ModeChange {
  RouteMode mode = RouteMode::kGreedy;
  std::size_t at = 0;  // index of the next transmission

  friend bool operator==(const ModeChange&, const ModeChange&) = default;
};

struct RouteTrace {
  std::string algorithm;
  NodeId source = 0;
  NodeId target = 0;
  Point target_pos;
  std::vector<Transmission> transmissions;
  std::vector<Point> anchors;  // p1 sequence, starting with the source
  std::vector<ModeChange> mode_log;
  bool delivered = false;
  std::size_t hop_count_all = 0;
  std::size_t hop_count_data = 0;
  FailureKind failure = FailureKind::kNone;
  std::string failure_detail;
  NodeId final_node = 0;
  std::size_t header_bytes_min = 0;
  std::size_t header_bytes_max = 0;

  friend bool operator==(const RouteTrace&, const RouteTrace&) = default;
};

// Handed to strategies for trace annotations only.
class StepContext {
 public:
  explicit StepContext(RouteTrace& trace) : trace_(trace) {}
  void anchor(const Point& p) { trace_.anchors.push_back(p); }
  void mode(RouteMode m);

 private:
  RouteTrace& trace_;
};

struct Action {
  enum class Kind { kSend, kDeliver, kFail };
  Kind kind = Kind::kSend;
  NodeId to = 0;
  TransmissionKind transmission = TransmissionKind::kDataForward;
  FailureKind failure = FailureKind::kNone;
  std::string detail;

  static Action send(NodeId to, TransmissionKind kind) { return {Kind::kSend, to, kind, {}, {}}; }
  static Action deliver() { return {Kind::kDeliver, 0, {}, {}, {}}; }
  static Action fail(FailureKind f, std::string why) { return {Kind::kFail, 0, {}, f, std::move(why)}; }
};

class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual Action on_message(NodeId node, const Neighborhood& nbhd, RoutingHeader& header,
                            StepContext& ctx) const = 0;
};

struct RunOptions {
  std::size_t budget = 0;  // 0 means 50 n
};

std::size_t default_budget(std::size_t node_count);

// Precondition s != t (Error(kProtocol) otherwise). Failures are recorded in
// the trace rather than thrown.
RouteTrace simulate(const GeometricGraph& g, const NeighborhoodRelation& rel, const Strategy& strategy,
                    NodeId s, NodeId t, const RunOptions& options = {});

struct MemoryReport {
  std::vector<std::size_t> per_node;
  double average = 0.0;
};

MemoryReport memory_report(const NeighborhoodRelation& rel);

enum class HopMetric { kAll, kData };

std::size_t hop_count(const RouteTrace& trace, HopMetric metric);

// (face - void) / face. Throws Error(kUndefined) when the face count is 0 and
// Error(kProtocol) unless both traces were delivered for the same pair.
double improvement(const RouteTrace& face_trace, const RouteTrace& void_trace,
                   HopMetric metric = HopMetric::kAll);

// One line per transmission: "seq from to KIND", after a "#" summary line.
void write_trace_text(std::ostream& out, const RouteTrace& trace);
std::string trace_to_json(const RouteTrace& trace);
RouteTrace trace_from_json(const std::string& text);

}  // namespace voidroute
