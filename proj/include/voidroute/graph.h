#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "voidroute/geometry.h"

namespace voidroute {

using NodeId = std::uint32_t;

inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

// Undirected edge, stored with a <= b. A self-loop can be represented so that
// validation can report it.
struct Edge {
  NodeId a = 0;
  NodeId b = 0;

  Edge() = default;
  Edge(NodeId u, NodeId v) : a(u < v ? u : v), b(u < v ? v : u) {}

  bool has(NodeId n) const { return a == n || b == n; }
  NodeId other(NodeId n) const { return n == a ? b : a; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

class GeometricGraph {
 public:
  GeometricGraph() = default;
  GeometricGraph(std::vector<Point> positions, std::vector<Edge> edges);

  std::size_t node_count() const { return positions_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  const Point& position(NodeId n) const { return positions_.at(n); }
  const std::vector<Point>& positions() const { return positions_; }

  // Edges in canonical sorted order; duplicates are kept so validate() can see them.
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_[index]; }

  // Sorted, de-duplicated neighbor list.
  std::span<const NodeId> neighbors(NodeId n) const { return adjacency_.at(n); }
  std::size_t degree(NodeId n) const { return adjacency_.at(n).size(); }

  bool has_edge(const Edge& e) const;
  std::optional<std::size_t> edge_index(const Edge& e) const;

  Segment segment(const Edge& e) const { return {position(e.a), position(e.b)}; }

  friend bool operator==(const GeometricGraph& x, const GeometricGraph& y) {
    return x.positions_ == y.positions_ && x.edges_ == y.edges_;
  }

 private:
  std::vector<Point> positions_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
};

enum class ViolationKind {
  kEndpointOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kCoincidentNodes,
  kOverlappingEdges,
  kNodeOnEdge,
  kConcurrentCrossing,
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;
  std::string message;
};

// Checks the structural invariants: endpoints exist, no self-loops, no
// duplicate edges, no coincident nodes, no collinear overlaps. Reports the
// first violation found.
std::optional<Violation> validate(const GeometricGraph& g);

// Stronger check used before traversal: validate() plus no node on the
// interior of an edge and no point interior to more than two edges.
std::optional<Violation> check_general_position(const GeometricGraph& g);

bool is_connected(const GeometricGraph& g);

// Minimum-hop path from a to b inclusive. Throws Error(kDisconnected).
std::vector<NodeId> bfs_path(const GeometricGraph& g, NodeId a, NodeId b);

// Hop distances from src; unreachable nodes hold SIZE_MAX.
std::vector<std::size_t> bfs_distances(const GeometricGraph& g, NodeId src);

// Same nodes, only edges of length <= r.
GeometricGraph unit_disk_subgraph(const GeometricGraph& g, const Coord& r);

// True when every edge has length <= r.
bool edges_within(const GeometricGraph& g, const Coord& r);

// Keeps (a, b) iff no other node lies strictly inside the disk with diameter ab.
GeometricGraph gabriel_subgraph(const GeometricGraph& g);

double avg_degree(const GeometricGraph& g);

enum class GenStrategy { kPureRandom, kUnitDiskPlusLinks };

struct GenParams {
  std::size_t n = 50;
  Coord area_side = 2;
  Coord u = Coord(3, 10);
  Coord f = 1;
  std::uint64_t seed = 1;
  GenStrategy strategy = GenStrategy::kUnitDiskPlusLinks;
  std::size_t attempt_cap = 1000;
};

// Coordinates are multiples of 2^-kLatticeBits.
inline constexpr int kLatticeBits = 20;

struct GenerationResult {
  GeometricGraph graph;
  std::size_t attempts = 0;
  std::uint64_t accepted_seed = 0;
};

// 1 up to u, linear down to 0 at f*u, 0 beyond.
Coord edge_probability(const Coord& dist, const Coord& u, const Coord& f);

// Deterministic in params. Throws Error(kRetryExhausted) when no acceptable
// graph is found within params.attempt_cap attempts.
GenerationResult generate(const GenParams& params);

// Node placement only (one attempt), exposed for the unsuitability statistics.
std::vector<Point> place_nodes(std::size_t n, const Coord& area_side, std::uint64_t seed);

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace voidroute
