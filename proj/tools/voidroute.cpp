// voidroute: generate graphs, run routes, reproduce the benchmark, verify
// neighborhood relations and render SVG pictures.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "voidroute/bench.h"
#include "voidroute/graph_io.h"
#include "voidroute/render.h"
#include "voidroute/routing.h"

using namespace voidroute;

namespace {

enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kVerifyFailed = 3,
  kNotDelivered = 4,
  kUnsuitable = 5,
  kLocalMinimum = 6,
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv("VOIDROUTE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, std::string("VOIDROUTE_SEED is not an integer: ") + env);
    }
  }
  return 1;
}

std::string meta_or(const GraphDocument& doc, const std::string& key, const std::string& fallback) {
  auto it = doc.meta.find(key);
  return it == doc.meta.end() ? fallback : it->second;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kParse, "cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kParse, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kRetryExhausted:
    case ErrorKind::kNotUnitDisk:
    case ErrorKind::kDisconnected:
    case ErrorKind::kNotPlanar: return kUnsuitable;
    case ErrorKind::kClosureViolation: return kVerifyFailed;
    default: return kFailure;
  }
}

// ---- generate

struct GenerateArgs {
  std::size_t n = 50;
  std::string u = "0.3";
  std::string f = "1";
  std::string area = "2";
  std::uint64_t seed = 1;
  std::string strategy = "unitdisk_plus_links";
  std::size_t attempt_cap = 1000;
  std::string out = "-";
};

int cmd_generate(const GenerateArgs& a) {
  GenParams p;
  p.n = a.n;
  p.u = parse_coord(a.u);
  p.f = parse_coord(a.f);
  p.area_side = parse_coord(a.area);
  p.seed = a.seed;
  p.attempt_cap = a.attempt_cap;
  p.strategy = a.strategy == "pure_random" ? GenStrategy::kPureRandom : GenStrategy::kUnitDiskPlusLinks;
  const GenerationResult r = generate(p);

  GraphDocument doc{r.graph, {}};
  doc.meta["u"] = format_coord(p.u);
  doc.meta["f"] = format_coord(p.f);
  doc.meta["seed"] = std::to_string(p.seed);
  doc.meta["strategy"] = a.strategy;
  write_text(a.out, serialize_graph(doc));

  const GeometricGraph core = unit_disk_subgraph(r.graph, p.u);
  std::cerr << "nodes=" << r.graph.node_count() << " edges=" << r.graph.edge_count()
            << " connected=" << (is_connected(r.graph) ? "yes" : "no")
            << " unit_disk_core_connected=" << (is_connected(core) ? "yes" : "no")
            << " unit_disk=" << (edges_within(r.graph, p.u) ? "yes" : "no") << " attempts=" << r.attempts
            << "\n";
  return kOk;
}

// ---- route

struct RouteArgs {
  std::string graph;
  std::string algo = "void2";
  NodeId s = 0;
  NodeId t = 0;
  std::string u;
  std::string relation = "closure";
  std::size_t k = 2;
  std::size_t budget = 0;
  std::string trace_json;
  std::string trace_text;
};

NeighborhoodRelation make_relation(const GeometricGraph& g, const std::string& kind, const Coord& u,
                                   std::size_t k, const CrossingIndex& index) {
  if (kind == "lemma1") return build_unitdisk_lemma1(g, u);
  if (kind == "khop") return build_khop(g, k);
  if (kind == "closure") return build_closure(g, index);
  throw Error(ErrorKind::kParse, "unknown relation '" + kind + "'");
}

int cmd_route(const RouteArgs& a) {
  const GraphDocument doc = read_graph_file(a.graph);
  const GeometricGraph& g = doc.graph;
  const auto algo = parse_algorithm(a.algo);
  if (!algo) throw Error(ErrorKind::kParse, "unknown algorithm '" + a.algo + "'");
  if (a.s >= g.node_count() || a.t >= g.node_count() || a.s == a.t) {
    throw Error(ErrorKind::kProtocol, "s and t must be distinct nodes of the graph");
  }
  if (bfs_distances(g, a.s)[a.t] == kUnreachable) {
    std::cerr << "error: " << a.s << " and " << a.t << " are disconnected\n";
    return kUnsuitable;
  }
  const Coord u = parse_coord(a.u.empty() ? meta_or(doc, "u", "1") : a.u);
  RunOptions opts;
  opts.budget = a.budget;

  RouteTrace trace;
  if (*algo == Algorithm::kFace2 || *algo == Algorithm::kGfg) {
    const GeometricGraph core = unit_disk_subgraph(g, u);
    if (bfs_distances(core, a.s)[a.t] == kUnreachable) {
      std::cerr << "error: graph unsuitable for " << to_string(*algo)
                << ": s and t are not connected in the unit-disk subgraph\n";
      return kUnsuitable;
    }
    trace = *algo == Algorithm::kFace2 ? route_face2(gabriel_subgraph(core), a.s, a.t, opts)
                                       : route_gfg(core, a.s, a.t, opts);
  } else if (*algo == Algorithm::kGreedy) {
    trace = route_greedy(g, a.s, a.t, opts);
  } else if (*algo == Algorithm::kCompass) {
    trace = route_compass(g, a.s, a.t, opts);
  } else {
    const CrossingIndex index(g);
    const NeighborhoodRelation rel = make_relation(g, a.relation, u, a.k, index);
    if (auto bad = verify_semiclosure(g, rel, index)) {
      std::cerr << "warning: relation is not semi-closed at " << to_string(bad->edge) << " x "
                << to_string(bad->crossing) << "\n";
    }
    if (*algo == Algorithm::kVoid1) trace = route_void1(g, rel, a.s, a.t, opts, &index);
    else if (*algo == Algorithm::kVoid2) trace = route_void2(g, rel, a.s, a.t, opts, &index);
    else trace = route_gvg(g, rel, a.s, a.t, VoidVariant::kVoid2, opts, &index);
  }

  if (!a.trace_json.empty()) write_text(a.trace_json, trace_to_json(trace) + "\n");
  if (!a.trace_text.empty()) {
    std::ostringstream ss;
    write_trace_text(ss, trace);
    write_text(a.trace_text, ss.str());
  }
  std::cout << trace.algorithm << " " << trace.source << " -> " << trace.target << " "
            << (trace.delivered ? "delivered" : "failed") << " hops_all=" << trace.hop_count_all
            << " hops_data=" << trace.hop_count_data << " header_bytes=" << trace.header_bytes_max;
  if (!trace.delivered) std::cout << " failure=" << to_string(trace.failure) << " (" << trace.failure_detail << ")";
  std::cout << "\n";
  if (trace.delivered) return kOk;
  return trace.failure == FailureKind::kLocalMinimum ? kLocalMinimum : kNotDelivered;
}

// ---- bench

struct BenchArgs {
  std::size_t n = 50;
  std::string u = "0.3";
  std::vector<std::string> f = {"1", "2", "3"};
  std::size_t graphs = 5;
  std::size_t pairs = 10;
  std::uint64_t seed = 1;
  std::size_t attempt_cap = 1000000;
  std::string csv = "-";
};

int cmd_bench(const BenchArgs& a) {
  BenchConfig c;
  c.n = a.n;
  c.u = parse_coord(a.u);
  c.fading.clear();
  for (const auto& f : a.f) c.fading.push_back(parse_coord(f));
  c.graphs = a.graphs;
  c.pairs = a.pairs;
  c.seed = a.seed;
  c.attempt_cap = a.attempt_cap;
  const BenchResult r = run_bench(c);

  std::ostringstream csv;
  write_bench_csv(csv, r.records);
  write_text(a.csv, csv.str());
  for (const auto& rec : r.records) {
    if (!rec.compared) {
      std::cerr << "skipped graph " << rec.graph_id << " pair " << rec.pair_index << ": " << rec.skip_reason
                << "\n";
    }
  }
  write_bench_summary(a.csv == "-" ? std::cerr : std::cout, r.summaries);
  return kOk;
}

// ---- verify

struct VerifyArgs {
  std::string graph;
  std::string relation = "lemma1";
  std::size_t k = 2;
  std::string u;
  bool search = false;
};

int cmd_verify(const VerifyArgs& a) {
  const GraphDocument doc = read_graph_file(a.graph);
  const GeometricGraph& g = doc.graph;
  const CrossingIndex index(g);
  const Coord u = parse_coord(a.u.empty() ? meta_or(doc, "u", "1") : a.u);
  const NeighborhoodRelation rel = make_relation(g, a.relation, u, a.k, index);
  std::cout << "relation=" << a.relation << " d=" << rel.d << " crossings=" << index.pairs().size()
            << " avg_neighborhood=" << avg_neighborhood_size(rel) << "\n";
  int code = kOk;
  if (auto bad = verify_semiclosure(g, rel, index)) {
    std::cout << "counterexample: edge " << to_string(bad->edge) << " crossing " << to_string(bad->crossing)
              << "\n";
    code = kVerifyFailed;
  } else {
    std::cout << "ok\n";
  }
  if (a.search) std::cout << "minimal_k=" << minimal_semiclosure_k(g, g.node_count(), index) << "\n";
  return code;
}

// ---- render

struct RenderArgs {
  std::string graph;
  std::string trace;
  std::string out = "-";
  int size = 800;
};

int cmd_render(const RenderArgs& a) {
  const GraphDocument doc = read_graph_file(a.graph);
  RenderOptions opts;
  opts.size = a.size;
  std::unique_ptr<RouteTrace> trace;
  if (!a.trace.empty()) trace = std::make_unique<RouteTrace>(trace_from_json(read_text(a.trace)));
  write_text(a.out, render_svg(doc.graph, trace.get(), opts));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Void traversal routing on geometric graphs"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  try {
    seed = default_seed();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  GenerateArgs gen;
  gen.seed = seed;
  auto* g = app.add_subcommand("generate", "Generate a random geometric graph");
  g->add_option("--n", gen.n, "Node count");
  g->add_option("--u", gen.u, "Connectivity unit");
  g->add_option("--f", gen.f, "Fading factor (>= 1)");
  g->add_option("--area", gen.area, "Side of the square area");
  g->add_option("--seed", gen.seed, "Seed (default from VOIDROUTE_SEED)");
  g->add_option("--strategy", gen.strategy, "unitdisk_plus_links or pure_random")
      ->check(CLI::IsMember({"unitdisk_plus_links", "pure_random"}));
  g->add_option("--attempt-cap", gen.attempt_cap, "Placement attempts before giving up");
  g->add_option("-o,--out", gen.out, "Output graph file ('-' for stdout)");

  RouteArgs route;
  auto* r = app.add_subcommand("route", "Route one message and report the trace");
  r->add_option("graph", route.graph, "Graph file")->required();
  r->add_option("--algo", route.algo, "greedy, compass, void1, void2, gvg, face2 or gfg");
  r->add_option("--s", route.s, "Source node")->required();
  r->add_option("--t", route.t, "Target node")->required();
  r->add_option("--u", route.u, "Unit radius (default: graph meta)");
  r->add_option("--relation", route.relation, "closure, lemma1 or khop")
      ->check(CLI::IsMember({"closure", "lemma1", "khop"}));
  r->add_option("--k", route.k, "Hop count for --relation khop");
  r->add_option("--budget", route.budget, "Transmission budget (default 50 n)");
  r->add_option("--trace", route.trace_json, "Write the trace document (JSON)");
  r->add_option("--log", route.trace_text, "Write the transmission log");

  BenchArgs bench;
  bench.seed = seed;
  auto* b = app.add_subcommand("bench", "Paired FACE-2 / VOID-2 benchmark");
  b->add_option("--n", bench.n, "Node count");
  b->add_option("--u", bench.u, "Connectivity unit");
  b->add_option("--f", bench.f, "Fading factors")->expected(1, -1);
  b->add_option("--graphs", bench.graphs, "Graphs per fading factor");
  b->add_option("--pairs", bench.pairs, "Pairs per graph");
  b->add_option("--seed", bench.seed, "Seed (default from VOIDROUTE_SEED)");
  b->add_option("--attempt-cap", bench.attempt_cap, "Placement attempts per graph");
  b->add_option("--csv", bench.csv, "CSV output ('-' for stdout)");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a neighborhood relation for semi-closure");
  v->add_option("graph", verify.graph, "Graph file")->required();
  v->add_option("--relation", verify.relation, "lemma1, khop or closure")
      ->check(CLI::IsMember({"closure", "lemma1", "khop"}));
  v->add_option("--k", verify.k, "Hop count for --relation khop");
  v->add_option("--u", verify.u, "Unit radius (default: graph meta)");
  v->add_flag("--search", verify.search, "Also report the minimal semi-closed k");

  RenderArgs render;
  auto* rd = app.add_subcommand("render", "Draw a graph and optionally a route as SVG");
  rd->add_option("graph", render.graph, "Graph file")->required();
  rd->add_option("--trace", render.trace, "Trace document from 'route --trace'");
  rd->add_option("-o,--out", render.out, "SVG output ('-' for stdout)");
  rd->add_option("--size", render.size, "Picture size in pixels");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*g) return cmd_generate(gen);
    if (*r) return cmd_route(route);
    if (*b) return cmd_bench(bench);
    if (*v) return cmd_verify(verify);
    if (*rd) return cmd_render(render);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kUsage;
}
