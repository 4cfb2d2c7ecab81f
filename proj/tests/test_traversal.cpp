#include <set>

#include "doctest.h"
#include "oracles/arrangement.h"
#include "support/small_graphs.h"
#include "support/void_compare.h"
#include "voidroute/traversal.h"

using namespace voidroute;

namespace {

// Two rows of nodes above and below a horizontal edge (d, h) with three
// chords crossing it: (a,j) at e, (b,k) at f and (c,i) at g.
struct Fig2 {
  enum : NodeId { d, h, a, j, b, k, c, i };
  GeometricGraph g;
  Point e{2, 0}, f{5, 0}, gp{7, 0};

  Fig2() {
    std::vector<Point> pos = {{0, 0}, {10, 0}, {1, 3}, {3, -3}, {4, 3}, {6, -3}, {6, 3}, {8, -3}};
    std::vector<Edge> edges = {{d, h}, {a, j}, {b, k}, {c, i}, {j, k}, {a, b},
                               {b, c}, {k, i}, {d, a}, {h, c}, {h, i}};
    g = GeometricGraph(std::move(pos), std::move(edges));
  }
};

Neighborhood hand_nbhd(const GeometricGraph& g, NodeId center, std::vector<Edge> edges) {
  return Neighborhood(center, g, {}, std::move(edges));
}

GeometricGraph square() {
  return GeometricGraph({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
}

}  // namespace

TEST_CASE("best_cut returns the nearest cut the neighborhood knows") {
  Fig2 fig;
  auto nd = hand_nbhd(fig.g, Fig2::d, {{Fig2::d, Fig2::h}, {Fig2::a, Fig2::j}, {Fig2::c, Fig2::i}});
  const DirectedEdgeRef cur{Edge(Fig2::d, Fig2::h), Fig2::h};
  auto cut = best_cut(nd, cur, fig.e);
  REQUIRE(cut);
  CHECK(cut->edge == Edge(Fig2::c, Fig2::i));
  CHECK(cut->point == fig.gp);

  auto nh = hand_nbhd(fig.g, Fig2::h, {{Fig2::d, Fig2::h}, {Fig2::b, Fig2::k}, {Fig2::c, Fig2::i}});
  auto own = best_cut(nh, cur, fig.e);
  REQUIRE(own);
  CHECK(own->edge == Edge(Fig2::b, Fig2::k));
  CHECK(own->point == fig.f);
}

TEST_CASE("best_cut is empty without crossing edges") {
  auto g = square();
  auto n0 = hand_nbhd(g, 0, {{0, 1}, {0, 3}, {1, 2}, {2, 3}});
  CHECK_FALSE(best_cut(n0, DirectedEdgeRef{Edge(0, 1), 1}, g.position(0)));
}

TEST_CASE("best_cut picks the earlier of two chords") {
  // Current edge (0,0)-(3,0); chords cross it at x = 1 and x = 2.
  GeometricGraph g({{0, 0}, {3, 0}, {1, 1}, {1, -1}, {2, 1}, {2, -1}}, {{0, 1}, {2, 3}, {4, 5}});
  auto n0 = hand_nbhd(g, 0, {{0, 1}, {2, 3}, {4, 5}});
  const DirectedEdgeRef cur{Edge(0, 1), 1};
  Coord best_t = 2;
  Edge best_e;
  for (const Edge& chord : {Edge(2, 3), Edge(4, 5)}) {
    auto x = std::get<PointContact>(segment_intersection(g.segment(Edge(0, 1)), g.segment(chord)));
    Coord t = param_along(g.segment(Edge(0, 1)), x.point);
    if (t < best_t) best_t = t, best_e = chord;
  }
  auto cut = best_cut(n0, cur, g.position(0));
  REQUIRE(cut);
  CHECK(cut->edge == best_e);
  CHECK(param_along(g.segment(Edge(0, 1)), cut->point) == Coord(1, 3));

  // Walking the other way from the far end, the x = 2 chord comes first.
  auto back = best_cut(n0, DirectedEdgeRef{Edge(0, 1), 0}, g.position(1));
  REQUIRE(back);
  CHECK(back->edge == Edge(4, 5));

  // Entry past the first chord skips it; entry exactly on it is beyond it.
  auto later = best_cut(n0, cur, Point(1, 0));
  REQUIRE(later);
  CHECK(later->edge == Edge(4, 5));
}

TEST_CASE("best_cut with the crossing cache agrees with the direct scan") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    auto g = testing_support::small_graph(seed, {.require_crossing = true});
    CrossingIndex cache(g);
    auto rel = build_khop(g, 1);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      for (NodeId w : g.neighbors(u)) {
        const DirectedEdgeRef cur{Edge(u, w), w};
        const auto direct = best_cut(rel.at(u), cur, g.position(u));
        const auto cached = best_cut(rel.at(u), cur, g.position(u), &cache);
        REQUIRE(direct.has_value() == cached.has_value());
        if (direct) CHECK(*direct == *cached);
      }
    }
  }
}

TEST_CASE("handle_edge_change suggests from the back end's view") {
  Fig2 fig;
  auto nd = hand_nbhd(fig.g, Fig2::d, {{Fig2::d, Fig2::h}, {Fig2::a, Fig2::j}, {Fig2::c, Fig2::i}});
  EdgeChangeMsg msg{Edge(Fig2::a, Fig2::j), DirectedEdgeRef{Edge(Fig2::d, Fig2::h), Fig2::h}, fig.e};
  auto sel = handle_edge_change(Fig2::d, nd, msg);
  CHECK(sel.current == msg.current);
  CHECK(sel.prev_edge == msg.prev_edge);
  REQUIRE(sel.suggested);
  CHECK(sel.suggested->edge == Edge(Fig2::c, Fig2::i));
  CHECK(sel.suggested->point == fig.gp);

  CHECK_THROWS_AS(handle_edge_change(Fig2::h, nd, msg), Error);
}

TEST_CASE("handle_edge_change with no crossings leaves the suggestion empty") {
  auto g = square();
  auto n0 = hand_nbhd(g, 0, {{0, 1}, {0, 3}});
  EdgeChangeMsg msg{Edge(0, 3), DirectedEdgeRef{Edge(0, 1), 1}, g.position(0)};
  auto sel = handle_edge_change(0, n0, msg);
  CHECK_FALSE(sel.suggested);
  CHECK(sel.entry_point == g.position(0));
}

TEST_CASE("handle_edge_selection overrides with a nearer cut and relays through the sender") {
  Fig2 fig;
  auto nh = hand_nbhd(fig.g, Fig2::h, {{Fig2::d, Fig2::h}, {Fig2::b, Fig2::k}, {Fig2::c, Fig2::i}});
  EdgeSelectionMsg sel{Edge(Fig2::a, Fig2::j), DirectedEdgeRef{Edge(Fig2::d, Fig2::h), Fig2::h}, fig.e,
                       Cut{Edge(Fig2::c, Fig2::i), fig.g.position(Fig2::c), fig.g.position(Fig2::i), fig.gp}};
  auto out = handle_edge_selection(Fig2::h, nh, sel, Fig2::d);
  CHECK(out.resolution.step.from == fig.e);
  CHECK(out.resolution.step.to == fig.f);
  CHECK(out.next.prev_edge == Edge(Fig2::d, Fig2::h));
  CHECK(out.next.current == DirectedEdgeRef{Edge(Fig2::b, Fig2::k), Fig2::k});
  CHECK(out.next.entry_point == fig.f);
  // N(h) has no route to b, so the message goes back to d.
  CHECK(out.delivery.recipient == Fig2::b);
  CHECK(out.delivery.via_sender);
  CHECK(out.delivery.route == std::vector<NodeId>{Fig2::h, Fig2::d});

  CHECK_THROWS_AS(handle_edge_selection(Fig2::d, nh, sel, Fig2::h), Error);
}

TEST_CASE("handle_edge_selection falls back to the next incident edge") {
  // Arriving at node 1 from 0 heading east; 1 has edges north and south.
  GeometricGraph g({{0, 0}, {2, 0}, {2, 2}, {2, -2}}, {{0, 1}, {1, 2}, {1, 3}});
  auto n1 = hand_nbhd(g, 1, {{0, 1}, {1, 2}, {1, 3}});
  EdgeSelectionMsg sel{Edge(0, 1), DirectedEdgeRef{Edge(0, 1), 1}, g.position(0), std::nullopt};
  auto out = handle_edge_selection(1, n1, sel, 0);
  CHECK_FALSE(out.resolution.cut);
  CHECK(out.resolution.step.to == g.position(1));
  // The right-hand turn is south.
  CHECK(out.next.current == DirectedEdgeRef{Edge(1, 3), 3});
  CHECK(out.next.entry_point == g.position(1));
  CHECK(out.delivery.route == std::vector<NodeId>{1});
}

TEST_CASE("dead end turns back along the same edge") {
  GeometricGraph g({{0, 0}, {2, 0}}, {{0, 1}});
  auto n1 = hand_nbhd(g, 1, {{0, 1}});
  EdgeSelectionMsg sel{Edge(0, 1), DirectedEdgeRef{Edge(0, 1), 1}, g.position(0), std::nullopt};
  auto out = handle_edge_selection(1, n1, sel, 0);
  CHECK(out.next.current == DirectedEdgeRef{Edge(0, 1), 0});
}

TEST_CASE("square interior is walked clockwise") {
  auto g = square();
  auto rel = build_khop(g, 1);
  auto steps = traverse_void(g, rel, DirectedEdgeRef{Edge(0, 3), 3}, g.position(0));
  REQUIRE(steps.size() == 4);
  CHECK(steps[0].edge == Edge(0, 3));
  CHECK(steps[1].edge == Edge(2, 3));
  CHECK(steps[2].edge == Edge(1, 2));
  CHECK(steps[3].edge == Edge(0, 1));
  CHECK(steps[3].to == g.position(0));

  auto outer = traverse_void(g, rel, DirectedEdgeRef{Edge(0, 1), 1}, g.position(0));
  REQUIRE(outer.size() == 4);
  CHECK(outer[1].edge == Edge(1, 2));
}

TEST_CASE("void jefk is walked e, f, k, j") {
  Fig2 fig;
  const std::size_t k = minimal_semiclosure_k(fig.g, fig.g.node_count());
  auto rel = build_khop(fig.g, k);
  auto steps = traverse_void(fig.g, rel, DirectedEdgeRef{Edge(Fig2::d, Fig2::h), Fig2::h}, fig.e);
  REQUIRE(steps.size() == 4);
  CHECK(steps[0].to == fig.f);
  CHECK(steps[1].edge == Edge(Fig2::b, Fig2::k));
  CHECK(steps[1].to == fig.g.position(Fig2::k));
  CHECK(steps[2].edge == Edge(Fig2::j, Fig2::k));
  CHECK(steps[2].to == fig.g.position(Fig2::j));
  CHECK(steps[3].edge == Edge(Fig2::a, Fig2::j));
  CHECK(steps[3].to == fig.e);
}

TEST_CASE("bowtie void boundaries match the arrangement") {
  // Square with both diagonals: four triangular voids around the center.
  GeometricGraph g({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {1, 3}});
  auto rel = build_khop(g, 1);
  REQUIRE_FALSE(verify_semiclosure(g, rel));
  auto faces = oracle::arrangement_faces(g);
  CHECK(faces.size() == 5);
  for (const auto& face : faces) CHECK(testing_support::compare_walk(g, rel, face) == "");
}

TEST_CASE("random small graphs match the arrangement oracle") {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    auto g = testing_support::small_graph(seed, {.require_crossing = seed % 2 == 0});
    const std::size_t k = minimal_semiclosure_k(g, g.node_count());
    auto rel = build_khop(g, k);
    CrossingIndex cache(g);
    auto faces = oracle::arrangement_faces(g);
    std::size_t non_negative = 0;
    for (const auto& face : faces) {
      if (face.signed_area2 >= 0) ++non_negative;
      CAPTURE(seed);
      CHECK(testing_support::compare_walk(g, rel, face) == "");
      CHECK(testing_support::compare_walk(g, rel, face, &cache) == "");
    }
    CHECK(non_negative == 1);
  }
}

TEST_CASE("planar void walk equals the face walk") {
  for (std::uint64_t seed = 200; seed < 260; ++seed) {
    auto g = gabriel_subgraph(testing_support::small_graph(seed));
    if (!is_connected(g)) continue;
    auto rel = build_khop(g, 1);
    for (const auto& e : g.edges()) {
      for (NodeId fwd : {e.a, e.b}) {
        const DirectedEdgeRef start{e, fwd};
        auto face = traverse_face_planar(g, start);
        auto steps = traverse_void(g, rel, start, g.position(start.back_end()));
        REQUIRE(face.size() == steps.size());
        for (std::size_t i = 0; i < face.size(); ++i) CHECK(face[i] == steps[i].edge);
      }
    }
  }
}

TEST_CASE("face walk on small planar graphs") {
  GeometricGraph tri({{0, 0}, {2, 0}, {1, 2}}, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(traverse_face_planar(tri, DirectedEdgeRef{Edge(0, 1), 1}).size() == 3);

  GeometricGraph one({{0, 0}, {1, 0}}, {{0, 1}});
  auto both = traverse_face_planar(one, DirectedEdgeRef{Edge(0, 1), 1});
  CHECK(both.size() == 2);

  // Square with one diagonal: faces from every directed edge, then Euler.
  GeometricGraph sq({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
  std::set<std::pair<Edge, NodeId>> seen;
  std::size_t faces = 0;
  std::vector<std::size_t> sizes;
  for (const auto& e : sq.edges()) {
    for (NodeId fwd : {e.a, e.b}) {
      if (seen.count({e, fwd})) continue;
      ++faces;
      DirectedEdgeRef cur{e, fwd};
      auto walk = traverse_face_planar(sq, cur);
      sizes.push_back(walk.size());
      // Mark every directed edge of this face.
      NodeId at = cur.back_end();
      for (const auto& w : walk) {
        const NodeId to = w.other(at);
        seen.insert({w, to});
        at = to;
      }
    }
  }
  CHECK(sq.node_count() - sq.edge_count() + faces == 2);
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{3, 3, 4});

  GeometricGraph x({{0, 0}, {2, 2}, {2, 0}, {0, 2}}, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(traverse_face_planar(x, DirectedEdgeRef{Edge(0, 1), 1}), Error);
}

TEST_CASE("protocol messages have a constant wire size") {
  EdgeChangeMsg small{Edge(0, 1), DirectedEdgeRef{Edge(0, 1), 1}, Point(0, 0)};
  EdgeChangeMsg big{Edge(70000, 90000), DirectedEdgeRef{Edge(70000, 90000), 70000},
                    Point(Coord(123456789, 987654321), Coord(-5, 7))};
  CHECK(serialize(small).size() == serialize(big).size());
  EdgeSelectionMsg empty{Edge(0, 1), DirectedEdgeRef{Edge(0, 1), 1}, Point(0, 0), std::nullopt};
  EdgeSelectionMsg full{Edge(0, 1), DirectedEdgeRef{Edge(0, 1), 1}, Point(0, 0),
                        Cut{Edge(2, 3), Point(Coord(1, 3), 1), Point(5, 5), Point(Coord(7, 11), 0)}};
  CHECK(serialize(empty).size() == serialize(full).size());
}

TEST_CASE("traversal logs one selection per step on the square") {
  auto g = square();
  auto rel = build_khop(g, 1);
  TraversalLog log;
  auto steps = traverse_void(g, rel, DirectedEdgeRef{Edge(0, 3), 3}, g.position(0), {}, nullptr, &log);
  REQUIRE(steps.size() == 4);
  REQUIRE(log.hops.size() == 4);
  for (const auto& h : log.hops) CHECK(h.kind == ProtocolHop::kEdgeSelection);
}

TEST_CASE("visitor can stop the walk") {
  auto g = square();
  auto rel = build_khop(g, 1);
  auto steps = traverse_void(g, rel, DirectedEdgeRef{Edge(0, 3), 3}, g.position(0),
                             [](const BoundaryStep&) { return false; });
  CHECK(steps.size() == 1);
}
