#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "voidroute/crossings.h"
#include "voidroute/graph.h"

namespace voidroute {

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

// The subgraph of G a node knows: node ids with their positions plus edges.
class Neighborhood {
 public:
  Neighborhood(NodeId center, const GeometricGraph& g, std::vector<NodeId> nodes,
               std::vector<Edge> edges);

  NodeId center() const { return center_; }
  std::span<const NodeId> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }

  bool contains_node(NodeId n) const;
  bool contains_edge(const Edge& e) const;

  // Throws Error(kProtocol) when n is not part of this neighborhood.
  const Point& position(NodeId n) const;

  // Nodes joined to `n` by an edge of this neighborhood, ascending.
  std::span<const NodeId> adjacent(NodeId n) const;

  // Hop count from the center inside this neighborhood.
  std::size_t hops_from_center(NodeId n) const;

  // Minimum-hop route inside this neighborhood, both ends included; ties go
  // to the lexicographically smallest id sequence.
  std::optional<std::vector<NodeId>> route(NodeId from, NodeId to) const;

 private:
  std::optional<std::size_t> local(NodeId n) const;

  NodeId center_;
  std::vector<NodeId> nodes_;
  std::vector<Point> positions_;
  std::vector<Edge> edges_;
  std::vector<std::vector<NodeId>> adjacent_;
  std::vector<std::size_t> hops_;
};

struct NeighborhoodRelation {
  std::vector<Neighborhood> per_node;
  std::size_t d = 1;

  const Neighborhood& at(NodeId n) const { return per_node.at(n); }
};

struct ClosureCounterexample {
  Edge edge;      // (u, v)
  Edge crossing;  // (w, x) meeting (u, v) away from a shared endpoint
};

// Definition check: for every two edges meeting away from a shared endpoint,
// N(u) or N(v) holds the other edge and routes of at most d hops to both of
// its ends. Both orders of every pair are checked.
std::optional<ClosureCounterexample> verify_semiclosure(const GeometricGraph& g,
                                                        const NeighborhoodRelation& rel);
std::optional<ClosureCounterexample> verify_semiclosure(const GeometricGraph& g,
                                                        const NeighborhoodRelation& rel,
                                                        const CrossingIndex& index);

// True when nbhd (centered at one end of the edge) satisfies the closure
// requirement for `crossing` with hop bound d.
bool closes_via(const Neighborhood& nbhd, const Edge& crossing, std::size_t d);

// Unit-disk construction with hop bound 2 for a graph whose edges are all at
// most `radius` long: N(u) holds its own edges and every (w, x) with
// |u,w| <= radius and |u,x| <= 2 radius / sqrt(3). Throws Error(kNotUnitDisk).
NeighborhoodRelation build_unitdisk_lemma1(const GeometricGraph& g, const Coord& radius = 1);

// N(u) is the subgraph induced by the k-hop ball around u; d = k.
NeighborhoodRelation build_khop(const GeometricGraph& g, std::size_t k);

// Smallest k <= k_max with a semi-closed k-hop relation. Throws
// Error(kNotFound) past k_max and Error(kDisconnected) on a disconnected graph.
std::size_t minimal_semiclosure_k(const GeometricGraph& g, std::size_t k_max);
std::size_t minimal_semiclosure_k(const GeometricGraph& g, std::size_t k_max,
                                  const CrossingIndex& index);

// Greedy closure: N(u) starts from u's own edges; every crossing pair that is
// not yet closed is closed at the endpoint needing fewer new nodes by adding
// the crossing edge and shortest G-paths to its ends. d is the smallest hop
// bound for which every pair can be closed. Throws Error(kDisconnected) when
// some pair cannot be closed at all.
NeighborhoodRelation build_closure(const GeometricGraph& g);
NeighborhoodRelation build_closure(const GeometricGraph& g, const CrossingIndex& index);

double avg_neighborhood_size(const NeighborhoodRelation& rel);

}  // namespace voidroute
