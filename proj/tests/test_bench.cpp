#include <algorithm>
#include <set>
#include <sstream>

#include "doctest.h"
#include "voidroute/bench.h"
#include "voidroute/render.h"
#include "voidroute/routing.h"

using namespace voidroute;

namespace {

BenchConfig tiny() {
  BenchConfig c;
  c.n = 16;
  c.u = Coord(1, 2);
  c.fading = {1, 2};
  c.graphs = 3;
  c.pairs = 4;
  c.seed = 11;
  c.attempt_cap = 200000;
  return c;
}

std::string csv(const BenchResult& r) {
  std::ostringstream out;
  write_bench_csv(out, r.records);
  return out.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

BenchRecord record(double imp, std::size_t fd, std::size_t vd, std::size_t graph, double nbhd, double deg) {
  BenchRecord r;
  r.f = 2;
  r.graph_id = graph;
  r.compared = true;
  r.improvement = imp;
  r.hops_face_data = fd;
  r.hops_void_data = vd;
  r.avg_nbhd_void = nbhd;
  r.avg_deg_gabriel = deg;
  return r;
}

}  // namespace

TEST_CASE("bench CSV is byte-identical across runs") {
  const auto a = run_bench(tiny());
  const auto b = run_bench(tiny());
  CHECK(csv(a) == csv(b));
  auto other = tiny();
  other.seed = 12;
  CHECK(csv(run_bench(other)) != csv(a));
}

TEST_CASE("bench CSV layout") {
  const auto res = run_bench(tiny());
  const std::string text = csv(res);
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line == kBenchCsvHeader);
  const std::size_t columns = count(line, ",") + 1;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(count(line, ",") + 1 == columns);
  }
  CHECK(rows == 2 * 3 * 4);
  CHECK(res.records.size() == rows);
  CHECK(res.summaries.size() == 2);
  CHECK(res.summaries[0].compared + res.summaries[1].compared > 0);
}

TEST_CASE("bench records are consistent") {
  const auto cfg = tiny();
  const auto res = run_bench(cfg);
  std::set<std::uint64_t> seeds_f1, seeds_f2;
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const auto& r = res.records[i];
    CHECK(r.graph_id == i / cfg.pairs);
    CHECK(r.pair_index == i % cfg.pairs);
    CHECK(r.s != r.t);
    CHECK(r.s < cfg.n);
    CHECK(r.t < cfg.n);
    (r.f == 1 ? seeds_f1 : seeds_f2).insert(r.seed);
    CHECK(r.compared == (r.face_delivered && r.void_delivered && r.skip_reason.empty()));
    if (r.compared) {
      const double expect = (static_cast<double>(r.hops_face) - static_cast<double>(r.hops_void)) /
                            static_cast<double>(r.hops_face);
      CHECK(r.improvement == doctest::Approx(expect));
    } else {
      CHECK_FALSE(r.skip_reason.empty());
    }
    CHECK(r.hops_void_data <= r.hops_void);
    CHECK(r.hops_face_data == r.hops_face);
  }
  // Both fading factors reuse the same node placements.
  CHECK(seeds_f1 == seeds_f2);
  CHECK(seeds_f1.size() == cfg.graphs);
}

TEST_CASE("bench reproduces a single route") {
  const auto cfg = tiny();
  const auto res = run_bench(cfg);
  const auto& r = res.records.front();
  GenParams p;
  p.n = cfg.n;
  p.u = cfg.u;
  p.f = r.f;
  p.seed = r.seed;
  p.attempt_cap = cfg.attempt_cap;
  const auto g = generate(p).graph;
  const auto rel = build_closure(g);
  const auto tv = route_void2(g, rel, r.s, r.t);
  CHECK(tv.hop_count_all == r.hops_void);
  CHECK(memory_report(rel).average == doctest::Approx(r.avg_nbhd_void));
  const auto planar = gabriel_subgraph(unit_disk_subgraph(g, cfg.u));
  CHECK(avg_degree(planar) == doctest::Approx(r.avg_deg_gabriel));
}

TEST_CASE("summaries") {
  std::vector<BenchRecord> recs = {record(0.5, 10, 5, 0, 4, 2), record(-0.25, 8, 8, 0, 4, 2),
                                   record(0.1, 0, 0, 1, 6, 3)};
  BenchRecord skipped = record(0, 0, 0, 1, 6, 3);
  skipped.compared = false;
  recs.push_back(skipped);
  BenchRecord other_f = record(9, 1, 1, 2, 100, 1);
  other_f.f = 1;
  recs.push_back(other_f);

  const auto s = summarize(2, recs);
  CHECK(s.compared == 3);
  CHECK(s.skipped == 1);
  CHECK(s.mean_improvement == doctest::Approx((0.5 - 0.25 + 0.1) / 3));
  CHECK(s.median_improvement == doctest::Approx(0.1));
  CHECK(s.mean_improvement_data == doctest::Approx((0.5 + 0.0) / 2));
  CHECK(s.avg_nbhd_void == doctest::Approx(5));
  CHECK(s.avg_deg_gabriel == doctest::Approx(2.5));
  CHECK(s.memory_ratio() == doctest::Approx(2));

  recs.pop_back();
  recs.push_back(record(0.3, 1, 1, 1, 6, 3));
  CHECK(summarize(2, recs).median_improvement == doctest::Approx(0.2));
  CHECK(summarize(5, recs).compared == 0);
  CHECK(summarize(5, recs).memory_ratio() == 0);

  std::ostringstream out;
  write_bench_summary(out, {s});
  CHECK(out.str().rfind("f=2 compared=3 skipped=1 mean_improvement=0.116667 ", 0) == 0);
}

TEST_CASE("svg rendering") {
  GeometricGraph g({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 3}}, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {3, 4}});
  const std::string plain = render_svg(g);
  CHECK(plain.rfind("<?xml", 0) == 0);
  CHECK(plain.find("</svg>") != std::string::npos);
  CHECK(count(plain, "<circle") == g.node_count());
  CHECK(count(plain, "<line") == g.edge_count());
  CHECK(plain == render_svg(g));

  const auto rel = build_khop(g, 1);
  const auto tr = route_void2(g, rel, 0, 4);
  REQUIRE(tr.delivered);
  const std::string drawn = render_svg(g, &tr);
  CHECK(drawn == render_svg(g, &tr));
  CHECK(count(drawn, "<line") == g.edge_count() + 1 + tr.transmissions.size());
  CHECK(drawn.find("#d62728") != std::string::npos);
  CHECK(render_svg(g, nullptr, {.size = 400}).find("width=\"400\"") != std::string::npos);
}
