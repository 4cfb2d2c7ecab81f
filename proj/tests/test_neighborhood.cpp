#include <random>

#include "doctest.h"
#include "oracles/closure.h"
#include "support/small_graphs.h"
#include "voidroute/neighborhood.h"

using namespace voidroute;

namespace {

Neighborhood make(const GeometricGraph& g, NodeId c, std::vector<Edge> edges) {
  return Neighborhood(c, g, {}, std::move(edges));
}

NeighborhoodRelation own_edges_only(const GeometricGraph& g) {
  NeighborhoodRelation rel;
  for (NodeId u = 0; u < g.node_count(); ++u) {
    std::vector<Edge> own;
    for (NodeId v : g.neighbors(u)) own.emplace_back(u, v);
    rel.per_node.push_back(make(g, u, own));
  }
  return rel;
}

// (0,-1)-(0,1) crosses (-1,0)-(1,0); the only other link runs from (0,1) to
// (-1,0) along a detour of `detour` hops, so w and x sit far from u and v.
GeometricGraph long_bridge(std::size_t detour) {
  std::vector<Point> pts = {{0, -1}, {0, 1}, {-1, 0}, {1, 0}};
  std::vector<Edge> edges = {{0, 1}, {2, 3}};
  // Corners of the detour: up from v, left, down, then right into w.
  const std::vector<Point> corners = {{0, 1}, {0, 5}, {-5, 5}, {-5, 0}, {-1, 0}};
  REQUIRE(detour >= 4);
  std::vector<Point> path = {corners[0]};
  const std::size_t extra = detour - 4;
  for (std::size_t leg = 0; leg + 1 < corners.size(); ++leg) {
    const std::size_t pieces = 1 + (leg == 0 ? extra : 0);
    for (std::size_t k = 1; k <= pieces; ++k) {
      const Coord t(static_cast<long>(k), static_cast<long>(pieces));
      const Point& a = corners[leg];
      const Point& b = corners[leg + 1];
      path.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
    }
  }
  NodeId prev = 1;
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    pts.push_back(path[i]);
    const auto id = static_cast<NodeId>(pts.size() - 1);
    edges.emplace_back(prev, id);
    prev = id;
  }
  edges.emplace_back(prev, 2);
  return GeometricGraph(std::move(pts), std::move(edges));
}

GeometricGraph crossed_pair() {
  // (0,1) crosses (2,3); u=0 sees both ends of (2,3) directly.
  return GeometricGraph({{0, 0}, {4, 4}, {0, 4}, {4, 0}}, {{0, 1}, {2, 3}, {0, 2}, {0, 3}});
}

}  // namespace

TEST_CASE("verify_semiclosure examples") {
  GeometricGraph path({{0, 0}, {1, 0}, {2, 1}}, {{0, 1}, {1, 2}});
  CHECK_FALSE(verify_semiclosure(path, own_edges_only(path)));

  const auto g = crossed_pair();
  NeighborhoodRelation rel = own_edges_only(g);
  rel.d = 1;
  rel.per_node[0] = make(g, 0, {{0, 2}, {0, 3}, {2, 3}, {0, 1}});
  // (2,3) is closed at u = 0, but from 2 the far end of (0,1) is two hops away.
  rel.per_node[2] = make(g, 2, {{0, 2}, {0, 1}});
  const auto gap = verify_semiclosure(g, rel);
  REQUIRE(gap);
  CHECK(gap->edge == Edge(2, 3));
  CHECK(gap->crossing == Edge(0, 1));
  rel.d = 2;
  CHECK_FALSE(verify_semiclosure(g, rel));

  GeometricGraph bare({{0, 0}, {4, 4}, {0, 4}, {4, 0}}, {{0, 1}, {2, 3}});
  const auto bad = verify_semiclosure(bare, own_edges_only(bare));
  REQUIRE(bad);
  CHECK(bad->edge == Edge(0, 1));
  CHECK(bad->crossing == Edge(2, 3));
}

TEST_CASE("closure needs the hop bound as well as the edge") {
  const auto g = long_bridge(4);
  NeighborhoodRelation whole;
  std::vector<Edge> all(g.edges().begin(), g.edges().end());
  for (NodeId u = 0; u < g.node_count(); ++u) whole.per_node.push_back(make(g, u, all));
  whole.d = 4;
  CHECK(verify_semiclosure(g, whole));
  whole.d = 5;
  CHECK_FALSE(verify_semiclosure(g, whole));
}

TEST_CASE("unit-disk construction examples") {
  // u at the origin; w at distance 0.9 and x at 1.1.
  GeometricGraph g({{0, 0}, {Coord(9, 10), 0}, {Coord(11, 10), 0}, {5, 5}}, {{1, 2}});
  CHECK(build_unitdisk_lemma1(g).at(0).contains_edge(Edge(1, 2)));
  GeometricGraph too_long({{0, 0}, {3, 0}}, {{0, 1}});
  CHECK_THROWS_AS(build_unitdisk_lemma1(too_long), Error);

  GeometricGraph ex({{0, 0}, {Coord(9, 10), 0}, {Coord(9, 10), Coord(69, 100)}, {5, 5}}, {{1, 2}});
  REQUIRE(edges_within(ex, 1));
  // |u,x|^2 = 0.81 + 0.4761 = 1.2861 <= 4/3: included.
  CHECK(build_unitdisk_lemma1(ex).at(0).contains_edge(Edge(1, 2)));

  GeometricGraph far({{0, 0}, {Coord(12, 10), 0}, {Coord(12, 10), Coord(5, 10)}, {5, 5}}, {{1, 2}});
  CHECK_FALSE(build_unitdisk_lemma1(far).at(0).contains_edge(Edge(1, 2)));

  GeometricGraph lonely({{0, 0}, {3, 3}, {4, 3}}, {{1, 2}});
  const auto rel = build_unitdisk_lemma1(lonely);
  CHECK(rel.at(0).node_count() == 1);
  CHECK(rel.at(0).edges().empty());
  CHECK(rel.d == 2);
}

TEST_CASE("unit-disk construction with a radius matches the rescaled unit graph") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    GenParams p;
    p.n = 30;
    p.u = Coord(1, 2);
    p.seed = seed;
    p.attempt_cap = 100000;
    const auto g = generate(p).graph;
    std::vector<Point> scaled;
    for (const auto& q : g.positions()) scaled.emplace_back(q.x * 2, q.y * 2);
    const GeometricGraph unit(scaled, g.edges());
    const auto a = build_unitdisk_lemma1(g, p.u);
    const auto b = build_unitdisk_lemma1(unit);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      CHECK(std::vector<Edge>(a.at(u).edges().begin(), a.at(u).edges().end()) ==
            std::vector<Edge>(b.at(u).edges().begin(), b.at(u).edges().end()));
    }
    CHECK_FALSE(verify_semiclosure(g, a));
    CHECK(oracle::semiclosed_brute_force(g, a));
  }
}

TEST_CASE("build_khop examples") {
  GeometricGraph path({{0, 0}, {1, 0}, {2, 1}, {3, 1}}, {{0, 1}, {1, 2}, {2, 3}});
  const auto r1 = build_khop(path, 1);
  CHECK(std::vector<NodeId>(r1.at(1).nodes().begin(), r1.at(1).nodes().end()) == std::vector<NodeId>{0, 1, 2});
  CHECK(std::vector<Edge>(r1.at(1).edges().begin(), r1.at(1).edges().end()) ==
        std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(r1.d == 1);

  const auto r3 = build_khop(path, 3);
  for (NodeId u = 0; u < 4; ++u) CHECK(r3.at(u).edges().size() == 3);

  GeometricGraph star({{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  CHECK(build_khop(star, 1).at(0).edges().size() == 4);
  CHECK(build_khop(star, 1).at(0).node_count() == 5);
  CHECK_THROWS_AS(build_khop(star, 0), Error);
}

TEST_CASE("minimal_semiclosure_k examples") {
  GeometricGraph tree({{0, 0}, {1, 0}, {2, 1}, {3, 1}}, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(minimal_semiclosure_k(tree, 4) == 1);

  GeometricGraph sq({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}});
  const std::size_t k = minimal_semiclosure_k(sq, 4);
  CHECK(k == 1);
  CHECK(oracle::semiclosed_brute_force(sq, build_khop(sq, k)));

  std::size_t last = 0;
  for (std::size_t h : {4, 5, 6, 7}) {
    const auto g = long_bridge(h);
    REQUIRE_FALSE(check_general_position(g));
    const std::size_t kk = minimal_semiclosure_k(g, g.node_count());
    CHECK(kk == h + 1);
    CHECK(kk > last);
    last = kk;
    CHECK(oracle::semiclosed_brute_force(g, build_khop(g, kk)));
    CHECK_FALSE(oracle::semiclosed_brute_force(g, build_khop(g, kk - 1)));
  }
  CHECK_THROWS_AS(minimal_semiclosure_k(long_bridge(6), 3), Error);
  GeometricGraph apart({{0, 0}, {1, 0}, {5, 5}}, {{0, 1}});
  CHECK_THROWS_AS(minimal_semiclosure_k(apart, 3), Error);
}

TEST_CASE("verifier agrees with the brute-force checker on small graphs") {
  testing_support::SmallGraphSpec spec;
  spec.require_crossing = true;
  std::mt19937_64 pick(17);
  int closed = 0, open = 0;
  for (std::uint64_t seed = 1; seed <= 150; ++seed) {
    const auto g = testing_support::small_graph(seed, spec);
    std::vector<NeighborhoodRelation> rels = {own_edges_only(g), build_khop(g, 1), build_khop(g, 2),
                                              build_closure(g)};
    // Random relations: own edges plus a random subset of the rest.
    for (int r = 0; r < 3; ++r) {
      NeighborhoodRelation rel;
      rel.d = 1 + pick() % 3;
      for (NodeId u = 0; u < g.node_count(); ++u) {
        std::vector<Edge> es;
        for (const auto& e : g.edges()) {
          if (e.has(u) || pick() % 2) es.push_back(e);
        }
        rel.per_node.push_back(make(g, u, es));
      }
      rels.push_back(std::move(rel));
    }
    for (const auto& rel : rels) {
      const bool ours = !verify_semiclosure(g, rel);
      CHECK(ours == oracle::semiclosed_brute_force(g, rel));
      (ours ? closed : open)++;
    }
  }
  CHECK(closed > 50);
  CHECK(open > 50);
}

TEST_CASE("generated relations are semi-closed") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    for (long f = 1; f <= 3; ++f) {
      GenParams p;
      p.n = 30;
      p.u = Coord(1, 2);
      p.f = f;
      p.seed = seed;
      p.attempt_cap = 100000;
      const auto g = generate(p).graph;
      const CrossingIndex index(g);
      const auto closure = build_closure(g, index);
      CHECK_FALSE(verify_semiclosure(g, closure, index));
      if (f == 1) CHECK_FALSE(verify_semiclosure(g, build_unitdisk_lemma1(g, p.u), index));
      CHECK_FALSE(verify_semiclosure(g, build_khop(g, g.node_count()), index));
      // Every node knows its own edges.
      for (NodeId u = 0; u < g.node_count(); ++u) {
        for (NodeId v : g.neighbors(u)) CHECK(closure.at(u).contains_edge(Edge(u, v)));
      }
      // The union of both ends' neighborhoods holds every crossing edge and a
      // short route to each of its ends.
      for (const auto& pr : index.pairs()) {
        const Edge& e = g.edge(pr.first);
        const Edge& o = g.edge(pr.second);
        bool found = false;
        for (NodeId c : {e.a, e.b}) {
          const auto& nb = closure.at(c);
          if (!nb.contains_edge(o)) continue;
          const auto ra = nb.route(c, o.a);
          const auto rb = nb.route(c, o.b);
          found = found || (ra && rb && ra->size() - 1 <= closure.d && rb->size() - 1 <= closure.d);
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("neighborhood routes and hop counts") {
  GeometricGraph g({{0, 0}, {1, 0}, {2, 0}, {1, 1}, {3, 3}}, {{0, 1}, {1, 2}, {0, 3}, {2, 3}});
  const auto nb = make(g, 0, {{0, 1}, {1, 2}, {0, 3}, {2, 3}});
  CHECK(nb.hops_from_center(2) == 2);
  CHECK(nb.hops_from_center(4) == kUnreachable);
  CHECK(*nb.route(0, 2) == std::vector<NodeId>{0, 1, 2});
  CHECK(*nb.route(2, 2) == std::vector<NodeId>{2});
  CHECK_FALSE(nb.route(0, 4));
  CHECK_THROWS_AS(nb.position(4), Error);
  CHECK(std::vector<NodeId>(nb.adjacent(0).begin(), nb.adjacent(0).end()) == std::vector<NodeId>{1, 3});
}

TEST_CASE("average sizes") {
  GeometricGraph path({{0, 0}, {1, 0}, {2, 1}}, {{0, 1}, {1, 2}});
  const auto rel = build_khop(path, 1);
  CHECK(avg_neighborhood_size(rel) == doctest::Approx(1 + avg_degree(path)));
  GeometricGraph empty({{0, 0}, {1, 0}}, {});
  CHECK(avg_degree(empty) == 0.0);
}
