#include "voidroute/neighborhood.h"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace voidroute {

Neighborhood::Neighborhood(NodeId center, const GeometricGraph& g, std::vector<NodeId> nodes,
                           std::vector<Edge> edges)
    : center_(center), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  nodes_.push_back(center);
  for (const auto& e : edges_) {
    nodes_.push_back(e.a);
    nodes_.push_back(e.b);
  }
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  positions_.reserve(nodes_.size());
  for (NodeId n : nodes_) positions_.push_back(g.position(n));

  adjacent_.resize(nodes_.size());
  for (const auto& e : edges_) {
    adjacent_[*local(e.a)].push_back(e.b);
    adjacent_[*local(e.b)].push_back(e.a);
  }
  for (auto& adj : adjacent_) std::sort(adj.begin(), adj.end());

  hops_.assign(nodes_.size(), kUnreachable);
  std::deque<NodeId> queue{center_};
  hops_[*local(center_)] = 0;
  while (!queue.empty()) {
    NodeId x = queue.front();
    queue.pop_front();
    const std::size_t hx = hops_[*local(x)];
    for (NodeId y : adjacent_[*local(x)]) {
      auto& hy = hops_[*local(y)];
      if (hy == kUnreachable) {
        hy = hx + 1;
        queue.push_back(y);
      }
    }
  }
}

std::optional<std::size_t> Neighborhood::local(NodeId n) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), n);
  if (it == nodes_.end() || *it != n) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

bool Neighborhood::contains_node(NodeId n) const { return local(n).has_value(); }

bool Neighborhood::contains_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

const Point& Neighborhood::position(NodeId n) const {
  auto i = local(n);
  if (!i) {
    throw Error(ErrorKind::kProtocol, "node " + std::to_string(n) + " is outside N(" +
                                          std::to_string(center_) + ")");
  }
  return positions_[*i];
}

std::span<const NodeId> Neighborhood::adjacent(NodeId n) const {
  auto i = local(n);
  if (!i) return {};
  return adjacent_[*i];
}

std::size_t Neighborhood::hops_from_center(NodeId n) const {
  auto i = local(n);
  return i ? hops_[*i] : kUnreachable;
}

std::optional<std::vector<NodeId>> Neighborhood::route(NodeId from, NodeId to) const {
  auto src = local(from);
  auto dst = local(to);
  if (!src || !dst) return std::nullopt;
  if (from == to) return std::vector<NodeId>{from};
  std::vector<NodeId> parent(nodes_.size(), kNoNode);
  parent[*src] = from;
  std::deque<NodeId> queue{from};
  while (!queue.empty() && parent[*dst] == kNoNode) {
    NodeId x = queue.front();
    queue.pop_front();
    for (NodeId y : adjacent_[*local(x)]) {
      auto ly = *local(y);
      if (parent[ly] == kNoNode) {
        parent[ly] = x;
        queue.push_back(y);
      }
    }
  }
  if (parent[*dst] == kNoNode) return std::nullopt;
  std::vector<NodeId> path{to};
  while (path.back() != from) path.push_back(parent[*local(path.back())]);
  std::reverse(path.begin(), path.end());
  return path;
}

bool closes_via(const Neighborhood& nbhd, const Edge& crossing, std::size_t d) {
  return nbhd.contains_edge(crossing) && nbhd.hops_from_center(crossing.a) <= d &&
         nbhd.hops_from_center(crossing.b) <= d;
}

std::optional<ClosureCounterexample> verify_semiclosure(const GeometricGraph& g,
                                                        const NeighborhoodRelation& rel) {
  return verify_semiclosure(g, rel, CrossingIndex(g));
}

std::optional<ClosureCounterexample> verify_semiclosure(const GeometricGraph& g,
                                                        const NeighborhoodRelation& rel,
                                                        const CrossingIndex& index) {
  if (rel.per_node.size() != g.node_count()) {
    throw Error(ErrorKind::kProtocol, "relation does not cover every node");
  }
  auto holds = [&](const Edge& e, const Edge& other) {
    return closes_via(rel.at(e.a), other, rel.d) || closes_via(rel.at(e.b), other, rel.d);
  };
  for (const auto& pair : index.pairs()) {
    const Edge& e1 = g.edge(pair.first);
    const Edge& e2 = g.edge(pair.second);
    if (!holds(e1, e2)) return ClosureCounterexample{e1, e2};
    if (!holds(e2, e1)) return ClosureCounterexample{e2, e1};
  }
  return std::nullopt;
}

NeighborhoodRelation build_unitdisk_lemma1(const GeometricGraph& g, const Coord& radius) {
  if (!edges_within(g, radius)) {
    throw Error(ErrorKind::kNotUnitDisk, "an edge is longer than the unit radius " +
                                             format_coord(radius));
  }
  const Coord near = radius * radius;
  const Coord far = near * 4 / 3;
  NeighborhoodRelation rel;
  rel.d = 2;
  rel.per_node.reserve(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    const Point& pu = g.position(u);
    std::vector<Edge> edges;
    for (const auto& e : g.edges()) {
      if (e.has(u)) {
        edges.push_back(e);
        continue;
      }
      const Coord da = euclid_dist_sq(pu, g.position(e.a));
      const Coord db = euclid_dist_sq(pu, g.position(e.b));
      if ((da <= near && db <= far) || (db <= near && da <= far)) edges.push_back(e);
    }
    rel.per_node.emplace_back(u, g, std::vector<NodeId>{}, std::move(edges));
  }
  return rel;
}

NeighborhoodRelation build_khop(const GeometricGraph& g, std::size_t k) {
  if (k < 1) throw Error(ErrorKind::kProtocol, "k-hop relation needs k >= 1");
  NeighborhoodRelation rel;
  rel.d = k;
  rel.per_node.reserve(g.node_count());
  std::vector<std::size_t> dist(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::vector<NodeId> ball{u};
    dist[u] = 0;
    for (std::size_t head = 0; head < ball.size(); ++head) {
      NodeId x = ball[head];
      if (dist[x] == k) continue;
      for (NodeId y : g.neighbors(x)) {
        if (dist[y] == kUnreachable) {
          dist[y] = dist[x] + 1;
          ball.push_back(y);
        }
      }
    }
    std::vector<Edge> edges;
    for (NodeId x : ball) {
      for (NodeId y : g.neighbors(x)) {
        if (x < y && dist[y] != kUnreachable) edges.emplace_back(x, y);
      }
    }
    rel.per_node.emplace_back(u, g, std::move(ball), std::move(edges));
  }
  return rel;
}

std::size_t minimal_semiclosure_k(const GeometricGraph& g, std::size_t k_max) {
  return minimal_semiclosure_k(g, k_max, CrossingIndex(g));
}

std::size_t minimal_semiclosure_k(const GeometricGraph& g, std::size_t k_max,
                                  const CrossingIndex& index) {
  if (!is_connected(g)) throw Error(ErrorKind::kDisconnected, "minimal k needs a connected graph");
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (!verify_semiclosure(g, build_khop(g, k), index)) return k;
  }
  throw Error(ErrorKind::kNotFound, "no semi-closed k-hop relation with k <= " + std::to_string(k_max));
}

NeighborhoodRelation build_closure(const GeometricGraph& g) { return build_closure(g, CrossingIndex(g)); }

NeighborhoodRelation build_closure(const GeometricGraph& g, const CrossingIndex& index) {
  const std::size_t n = g.node_count();
  std::vector<std::vector<std::size_t>> dist(n);
  for (NodeId u = 0; u < n; ++u) dist[u] = bfs_distances(g, u);
  auto reach = [&](NodeId c, const Edge& other) { return std::max(dist[c][other.a], dist[c][other.b]); };

  struct Option {
    NodeId center = 0;
    std::vector<Edge> edges;
    std::vector<NodeId> foreign;  // nodes beyond the center's own neighbors
  };
  struct Requirement {
    std::vector<Option> options;
    std::size_t chosen = 0;
  };

  std::vector<std::pair<Edge, Edge>> ordered;
  for (const auto& pair : index.pairs()) {
    ordered.emplace_back(g.edge(pair.first), g.edge(pair.second));
    ordered.emplace_back(g.edge(pair.second), g.edge(pair.first));
  }
  std::size_t d = 1;
  for (const auto& [e, other] : ordered) {
    const std::size_t need = std::min(reach(e.a, other), reach(e.b, other));
    if (need == kUnreachable) {
      throw Error(ErrorKind::kDisconnected, "crossing edge unreachable from " + to_string(e));
    }
    d = std::max(d, need);
  }

  std::vector<Requirement> reqs;
  reqs.reserve(ordered.size());
  for (const auto& [e, other] : ordered) {
    Requirement r;
    for (NodeId c : {e.a, e.b}) {
      if (reach(c, other) > d) continue;
      Option o;
      o.center = c;
      o.edges.push_back(other);
      std::set<NodeId> foreign;
      for (NodeId end : {other.a, other.b}) {
        const auto path = bfs_path(g, c, end);
        for (std::size_t i = 1; i < path.size(); ++i) {
          o.edges.emplace_back(path[i - 1], path[i]);
          if (dist[c][path[i]] > 1) foreign.insert(path[i]);
        }
      }
      o.foreign.assign(foreign.begin(), foreign.end());
      r.options.push_back(std::move(o));
    }
    reqs.push_back(std::move(r));
  }

  // need[c][w]: how many chosen options make c hold the foreign node w.
  std::vector<std::map<NodeId, std::size_t>> need(n);
  auto fresh = [&](const Option& o) {
    std::size_t k = 0;
    for (NodeId w : o.foreign) k += need[o.center].count(w) ? 0 : 1;
    return k;
  };
  auto sole = [&](const Option& o) {
    std::size_t k = 0;
    for (NodeId w : o.foreign) k += need[o.center].at(w) == 1 ? 1 : 0;
    return k;
  };
  auto take = [&](const Option& o) {
    for (NodeId w : o.foreign) ++need[o.center][w];
  };
  auto drop = [&](const Option& o) {
    for (NodeId w : o.foreign) {
      if (--need[o.center][w] == 0) need[o.center].erase(w);
    }
  };

  for (auto& r : reqs) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i < r.options.size(); ++i) {
      const std::size_t ci = fresh(r.options[i]);
      const std::size_t cp = fresh(r.options[pick]);
      if (ci < cp || (ci == cp && need[r.options[i].center].size() > need[r.options[pick].center].size())) {
        pick = i;
      }
    }
    r.chosen = pick;
    take(r.options[pick]);
  }
  // Move requirements to the other endpoint while that strictly saves nodes.
  for (bool moved = true; moved;) {
    moved = false;
    for (auto& r : reqs) {
      if (r.options.size() < 2) continue;
      const Option& cur = r.options[r.chosen];
      const Option& alt = r.options[1 - r.chosen];
      if (fresh(alt) < sole(cur)) {
        drop(cur);
        r.chosen = 1 - r.chosen;
        take(alt);
        moved = true;
      }
    }
  }

  std::vector<std::vector<Edge>> edges(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) edges[u].emplace_back(u, v);
  }
  for (const auto& r : reqs) {
    const Option& o = r.options[r.chosen];
    edges[o.center].insert(edges[o.center].end(), o.edges.begin(), o.edges.end());
  }
  NeighborhoodRelation rel;
  rel.d = d;
  rel.per_node.reserve(n);
  for (NodeId u = 0; u < n; ++u) rel.per_node.emplace_back(u, g, std::vector<NodeId>{}, std::move(edges[u]));
  return rel;
}

double avg_neighborhood_size(const NeighborhoodRelation& rel) {
  if (rel.per_node.empty()) return 0.0;
  std::size_t total = 0;
  for (const auto& n : rel.per_node) total += n.node_count();
  return static_cast<double>(total) / static_cast<double>(rel.per_node.size());
}

}  // namespace voidroute
