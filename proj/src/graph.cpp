#include "voidroute/graph.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <random>

#include "voidroute/crossings.h"

namespace voidroute {

std::string to_string(const Edge& e) {
  return "(" + std::to_string(e.a) + "," + std::to_string(e.b) + ")";
}

GeometricGraph::GeometricGraph(std::vector<Point> positions, std::vector<Edge> edges)
    : positions_(std::move(positions)), edges_(std::move(edges)), adjacency_(positions_.size()) {
  std::sort(edges_.begin(), edges_.end());
  for (const auto& e : edges_) {
    if (e.a == e.b || e.b >= positions_.size()) continue;
    adjacency_[e.a].push_back(e.b);
    adjacency_[e.b].push_back(e.a);
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
}

bool GeometricGraph::has_edge(const Edge& e) const {
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::optional<std::size_t> GeometricGraph::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kEndpointOutOfRange: return "endpoint out of range";
    case ViolationKind::kSelfLoop: return "self-loop";
    case ViolationKind::kDuplicateEdge: return "duplicate edge";
    case ViolationKind::kCoincidentNodes: return "coincident nodes";
    case ViolationKind::kOverlappingEdges: return "overlapping edges";
    case ViolationKind::kNodeOnEdge: return "node on edge interior";
    case ViolationKind::kConcurrentCrossing: return "three or more edges through one point";
  }
  return "unknown";
}

namespace {

Violation make_violation(ViolationKind kind, std::vector<NodeId> nodes, std::vector<Edge> edges) {
  std::string msg = to_string(kind);
  for (auto n : nodes) msg += " node " + std::to_string(n);
  for (const auto& e : edges) msg += " edge " + to_string(e);
  return {kind, std::move(nodes), std::move(edges), std::move(msg)};
}

std::optional<Violation> validate_structure(const GeometricGraph& g) {
  const auto& edges = g.edges();
  for (const auto& e : edges) {
    if (e.b >= g.node_count()) {
      return make_violation(ViolationKind::kEndpointOutOfRange, {}, {e});
    }
    if (e.a == e.b) return make_violation(ViolationKind::kSelfLoop, {e.a}, {e});
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1]) {
      return make_violation(ViolationKind::kDuplicateEdge, {}, {edges[i]});
    }
  }
  std::vector<NodeId> order(g.node_count());
  for (NodeId i = 0; i < order.size(); ++i) order[i] = i;
  PointLess less;
  std::sort(order.begin(), order.end(), [&](NodeId x, NodeId y) {
    const auto& px = g.position(x);
    const auto& py = g.position(y);
    if (px == py) return x < y;
    return less(px, py);
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (g.position(order[i]) == g.position(order[i - 1])) {
      return make_violation(ViolationKind::kCoincidentNodes,
                            {std::min(order[i - 1], order[i]), std::max(order[i - 1], order[i])},
                            {});
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Violation> validate(const GeometricGraph& g) {
  if (auto v = validate_structure(g)) return v;
  CrossingIndex index(g);
  if (!index.overlaps().empty()) {
    const auto& o = index.overlaps().front();
    return make_violation(ViolationKind::kOverlappingEdges, {}, {g.edge(o.first), g.edge(o.second)});
  }
  return std::nullopt;
}

std::optional<Violation> check_general_position(const GeometricGraph& g) {
  if (auto v = validate_structure(g)) return v;
  CrossingIndex index(g);
  if (!index.overlaps().empty()) {
    const auto& o = index.overlaps().front();
    return make_violation(ViolationKind::kOverlappingEdges, {}, {g.edge(o.first), g.edge(o.second)});
  }
  for (const auto& p : index.pairs()) {
    if (!p.proper) {
      const Edge& e1 = g.edge(p.first);
      const Edge& e2 = g.edge(p.second);
      NodeId node = kNoNode;
      for (NodeId n : {e1.a, e1.b, e2.a, e2.b}) {
        if (g.position(n) == p.point) node = n;
      }
      return make_violation(ViolationKind::kNodeOnEdge, {node}, {e1, e2});
    }
  }
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    auto list = index.along(i);
    for (std::size_t k = 1; k < list.size(); ++k) {
      if (list[k].param == list[k - 1].param) {
        return make_violation(ViolationKind::kConcurrentCrossing, {},
                              {g.edge(i), g.edge(list[k - 1].other), g.edge(list[k].other)});
      }
    }
  }
  // Nodes with edges are covered by the pair scan above; isolated ones are not.
  for (NodeId n = 0; n < g.node_count(); ++n) {
    if (g.degree(n) > 0) continue;
    for (const auto& e : g.edges()) {
      if (on_segment(g.segment(e), g.position(n))) {
        return make_violation(ViolationKind::kNodeOnEdge, {n}, {e});
      }
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> bfs_distances(const GeometricGraph& g, NodeId src) {
  std::vector<std::size_t> dist(g.node_count(), std::numeric_limits<std::size_t>::max());
  std::deque<NodeId> queue{src};
  dist.at(src) = 0;
  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : g.neighbors(u)) {
      if (dist[v] == std::numeric_limits<std::size_t>::max()) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

bool is_connected(const GeometricGraph& g) {
  if (g.node_count() == 0) return true;
  auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(),
                      [](std::size_t d) { return d == std::numeric_limits<std::size_t>::max(); });
}

std::vector<NodeId> bfs_path(const GeometricGraph& g, NodeId a, NodeId b) {
  std::vector<NodeId> parent(g.node_count(), kNoNode);
  std::deque<NodeId> queue{a};
  parent.at(a) = a;
  while (!queue.empty() && parent.at(b) == kNoNode) {
    NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : g.neighbors(u)) {
      if (parent[v] == kNoNode) {
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  if (parent[b] == kNoNode) {
    throw Error(ErrorKind::kDisconnected,
                "no path between " + std::to_string(a) + " and " + std::to_string(b));
  }
  std::vector<NodeId> path{b};
  while (path.back() != a) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

bool edges_within(const GeometricGraph& g, const Coord& r) {
  const Coord r2 = r * r;
  return std::all_of(g.edges().begin(), g.edges().end(), [&](const Edge& e) {
    return euclid_dist_sq(g.position(e.a), g.position(e.b)) <= r2;
  });
}

GeometricGraph unit_disk_subgraph(const GeometricGraph& g, const Coord& r) {
  const Coord r2 = r * r;
  std::vector<Edge> kept;
  for (const auto& e : g.edges()) {
    if (euclid_dist_sq(g.position(e.a), g.position(e.b)) <= r2) kept.push_back(e);
  }
  return GeometricGraph(g.positions(), std::move(kept));
}

GeometricGraph gabriel_subgraph(const GeometricGraph& g) {
  std::vector<Edge> kept;
  const Coord half(1, 2);
  for (const auto& e : g.edges()) {
    const Point& a = g.position(e.a);
    const Point& b = g.position(e.b);
    const Point mid{(a.x + b.x) * half, (a.y + b.y) * half};
    const Coord radius_sq = euclid_dist_sq(a, b) / 4;
    bool witnessed = false;
    for (NodeId w = 0; w < g.node_count() && !witnessed; ++w) {
      if (w == e.a || w == e.b) continue;
      witnessed = euclid_dist_sq(g.position(w), mid) < radius_sq;
    }
    if (!witnessed) kept.push_back(e);
  }
  return GeometricGraph(g.positions(), std::move(kept));
}

double avg_degree(const GeometricGraph& g) {
  if (g.node_count() == 0) return 0.0;
  return 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(g.node_count());
}

Coord edge_probability(const Coord& dist, const Coord& u, const Coord& f) {
  if (dist <= u) return 1;
  const Coord far = f * u;
  if (dist >= far) return 0;
  return (far - dist) / (far - u);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the combined value.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

std::uint64_t lattice_cells(const Coord& area_side) {
  Coord cells = area_side * Coord(mpz_class(1) << kLatticeBits);
  mpz_class whole = cells.get_num() / cells.get_den();
  if (whole <= 0) throw Error(ErrorKind::kGeometry, "area side too small for the lattice");
  return whole.get_ui();
}

Point draw_point(std::mt19937_64& rng, std::uint64_t cells, const mpz_class& den) {
  Coord x(mpz_class(std::to_string(rng() % cells)), den);
  Coord y(mpz_class(std::to_string(rng() % cells)), den);
  x.canonicalize();
  y.canonicalize();
  return {x, y};
}

std::vector<Point> draw_points(std::mt19937_64& rng, std::size_t n, const Coord& area_side) {
  const std::uint64_t cells = lattice_cells(area_side);
  const mpz_class den = mpz_class(1) << kLatticeBits;
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pts.push_back(draw_point(rng, cells, den));
  return pts;
}

// Uniform rational in [0, 1) with 53 random bits.
Coord draw_unit(std::mt19937_64& rng) {
  Coord v(mpz_class(std::to_string(rng() >> 11)), mpz_class(1) << 53);
  v.canonicalize();
  return v;
}

bool connected_under(std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<NodeId>> adj(n);
  for (const auto& e : edges) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<bool> seen(n, false);
  std::deque<NodeId> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    NodeId x = queue.front();
    queue.pop_front();
    for (NodeId y : adj[x]) {
      if (!seen[y]) {
        seen[y] = true;
        ++count;
        queue.push_back(y);
      }
    }
  }
  return count == n;
}

}  // namespace

std::vector<Point> place_nodes(std::size_t n, const Coord& area_side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return draw_points(rng, n, area_side);
}

GenerationResult generate(const GenParams& params) {
  if (params.n < 2) throw Error(ErrorKind::kGeometry, "generate needs n >= 2");
  if (params.u <= 0) throw Error(ErrorKind::kGeometry, "generate needs u > 0");
  if (params.f < 1) throw Error(ErrorKind::kGeometry, "generate needs f >= 1");

  const Coord u2 = params.u * params.u;
  const Coord far = params.f * params.u;
  const Coord far2 = far * far;
  const Coord ramp = far - params.u;

  for (std::size_t attempt = 0; attempt < params.attempt_cap; ++attempt) {
    const std::uint64_t seed = mix_seed(params.seed, attempt);
    std::mt19937_64 rng(seed);
    auto pts = draw_points(rng, params.n, params.area_side);

    std::vector<Edge> core;
    std::vector<std::pair<NodeId, NodeId>> ring;
    std::vector<Coord> ring_dist_sq;
    auto frame = lattice_frame(pts);
    if (frame) {
      // Integer image: coordinates are xs / den with |xs| small, so squared
      // lattice distances fit in 64 bits and thresholds scale by den^2.
      const mpz_class den2 = frame->denominator * frame->denominator;
      const Coord near_scaled = u2 * den2;
      const Coord far_scaled = far2 * den2;
      mpz_class near_floor, far_ceil;
      mpz_fdiv_q(near_floor.get_mpz_t(), near_scaled.get_num_mpz_t(), near_scaled.get_den_mpz_t());
      mpz_cdiv_q(far_ceil.get_mpz_t(), far_scaled.get_num_mpz_t(), far_scaled.get_den_mpz_t());
      const bool small = mpz_fits_slong_p(far_ceil.get_mpz_t()) != 0;
      if (small) {
        const long near_max = near_floor.get_si();
        const long far_lim = far_ceil.get_si();
        for (NodeId i = 0; i < params.n; ++i) {
          for (NodeId j = i + 1; j < params.n; ++j) {
            const long dx = static_cast<long>(frame->xs[i] - frame->xs[j]);
            const long dy = static_cast<long>(frame->ys[i] - frame->ys[j]);
            const long d2 = dx * dx + dy * dy;
            if (d2 <= near_max) {
              core.emplace_back(i, j);
            } else if (d2 < far_lim) {
              ring.emplace_back(i, j);
              ring_dist_sq.push_back(Coord(mpz_class(d2), den2));
            }
          }
        }
      } else {
        frame.reset();
      }
    }
    if (!frame) {
      for (NodeId i = 0; i < params.n; ++i) {
        for (NodeId j = i + 1; j < params.n; ++j) {
          Coord d2 = euclid_dist_sq(pts[i], pts[j]);
          if (d2 <= u2) {
            core.emplace_back(i, j);
          } else if (d2 < far2) {
            ring.emplace_back(i, j);
            ring_dist_sq.push_back(std::move(d2));
          }
        }
      }
    }
    if (params.strategy == GenStrategy::kUnitDiskPlusLinks && !connected_under(params.n, core)) {
      continue;
    }
    std::vector<Edge> edges = core;
    for (std::size_t k = 0; k < ring.size(); ++k) {
      // Keep with probability (far - d) / (far - u), i.e. iff d < far - U * ramp.
      const Coord threshold = far - draw_unit(rng) * ramp;
      if (ring_dist_sq[k] < threshold * threshold) edges.emplace_back(ring[k].first, ring[k].second);
    }
    GeometricGraph g(std::move(pts), std::move(edges));
    if (check_general_position(g)) continue;
    return {std::move(g), attempt + 1, seed};
  }
  throw Error(ErrorKind::kRetryExhausted,
              "no acceptable graph after " + std::to_string(params.attempt_cap) + " attempts");
}

}  // namespace voidroute
