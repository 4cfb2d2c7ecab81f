#pragma once

#include <optional>
#include <span>
#include <vector>

#include "voidroute/graph.h"

namespace voidroute {

// Where another edge meets this one away from a shared endpoint.
struct Crossing {
  std::size_t other = 0;  // index into GeometricGraph::edges()
  Point point;
  Coord param;            // along this edge, from edge.a (0) to edge.b (1)
  bool proper = true;     // interior to both edges
};

struct CrossingPair {
  std::size_t first = 0;
  std::size_t second = 0;
  Point point;
  bool proper = true;
};

struct OverlapPair {
  std::size_t first = 0;
  std::size_t second = 0;
};

// All pairwise edge intersections of a graph, excluding contacts at a shared
// endpoint. This is a cache of facts each node could compute from the two
// segments alone; consumers that must stay local filter it by what they know.
class CrossingIndex {
 public:
  explicit CrossingIndex(const GeometricGraph& g);

  // Sorted by param, ties by other-edge index.
  std::span<const Crossing> along(std::size_t edge_index) const { return along_[edge_index]; }
  const std::vector<CrossingPair>& pairs() const { return pairs_; }
  const std::vector<OverlapPair>& overlaps() const { return overlaps_; }

  const Edge& edge(std::size_t index) const { return edges_[index]; }
  std::optional<std::size_t> edge_index(const Edge& e) const;

  bool planar() const { return pairs_.empty() && overlaps_.empty(); }
  std::size_t proper_crossing_count() const;

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<Crossing>> along_;
  std::vector<CrossingPair> pairs_;
  std::vector<OverlapPair> overlaps_;
};

}  // namespace voidroute
