#include "voidroute/bench.h"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <random>

#include "voidroute/routing.h"

namespace voidroute {

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string decimal(const Coord& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", to_double(c));
  return buf;
}

std::string reason_for(const char* side, const RouteTrace& trace) {
  return std::string(side) + " " + to_string(trace.failure);
}

void run_graph(const BenchConfig& config, const Coord& f, std::size_t graph_id, std::uint64_t graph_seed,
               std::vector<BenchRecord>& out) {
  GenParams params;
  params.n = config.n;
  params.u = config.u;
  params.f = f;
  params.seed = graph_seed;
  params.attempt_cap = config.attempt_cap;
  const GeometricGraph g = generate(params).graph;

  const CrossingIndex index(g);
  const GeometricGraph core = unit_disk_subgraph(g, config.u);
  const GeometricGraph planar = gabriel_subgraph(core);
  const NeighborhoodRelation rel = build_closure(g, index);
  if (auto bad = verify_semiclosure(g, rel, index)) {
    throw Error(ErrorKind::kClosureViolation, "closure relation fails at " + to_string(bad->edge) +
                                                  " x " + to_string(bad->crossing));
  }
  const bool face_ok = is_connected(core);
  const double nbhd = avg_neighborhood_size(rel);
  const double deg = avg_degree(planar);

  std::mt19937_64 rng(mix_seed(graph_seed, 0x70a1u));
  for (std::size_t k = 0; k < config.pairs; ++k) {
    BenchRecord r;
    r.graph_id = graph_id;
    r.n = config.n;
    r.u = config.u;
    r.f = f;
    r.seed = graph_seed;
    r.pair_index = k;
    do {
      r.s = static_cast<NodeId>(rng() % config.n);
      r.t = static_cast<NodeId>(rng() % config.n);
    } while (r.s == r.t);
    r.avg_nbhd_void = nbhd;
    r.avg_deg_gabriel = deg;

    const RouteTrace tv = route_void2(g, rel, r.s, r.t, {}, &index);
    r.hops_void = tv.hop_count_all;
    r.hops_void_data = tv.hop_count_data;
    r.void_delivered = tv.delivered;
    if (!face_ok) {
      r.skip_reason = "unsuitable for FACE-2";
    } else {
      const RouteTrace tf = route_face2(planar, r.s, r.t);
      r.hops_face = tf.hop_count_all;
      r.hops_face_data = tf.hop_count_data;
      r.face_delivered = tf.delivered;
      if (!tf.delivered) r.skip_reason = reason_for("face", tf);
      if (!tv.delivered) r.skip_reason += (r.skip_reason.empty() ? "" : "; ") + reason_for("void", tv);
      if (tf.delivered && tv.delivered) {
        r.compared = true;
        r.improvement = improvement(tf, tv);
      }
    }
    out.push_back(std::move(r));
  }
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

BenchSummary summarize(const Coord& f, const std::vector<BenchRecord>& records) {
  BenchSummary sum;
  sum.f = f;
  std::vector<double> imp, imp_data, nbhd, deg;
  std::vector<std::size_t> seen;
  for (const auto& r : records) {
    if (r.f != f) continue;
    if (std::find(seen.begin(), seen.end(), r.graph_id) == seen.end()) {
      seen.push_back(r.graph_id);
      nbhd.push_back(r.avg_nbhd_void);
      deg.push_back(r.avg_deg_gabriel);
    }
    if (!r.compared) {
      ++sum.skipped;
      continue;
    }
    ++sum.compared;
    imp.push_back(r.improvement);
    if (r.hops_face_data > 0) {
      imp_data.push_back((static_cast<double>(r.hops_face_data) - static_cast<double>(r.hops_void_data)) /
                         static_cast<double>(r.hops_face_data));
    }
  }
  sum.mean_improvement = mean_of(imp);
  if (!imp.empty()) {
    std::sort(imp.begin(), imp.end());
    const std::size_t m = imp.size() / 2;
    sum.median_improvement = imp.size() % 2 ? imp[m] : (imp[m - 1] + imp[m]) / 2;
  }
  sum.mean_improvement_data = mean_of(imp_data);
  sum.avg_nbhd_void = mean_of(nbhd);
  sum.avg_deg_gabriel = mean_of(deg);
  return sum;
}

BenchResult run_bench(const BenchConfig& config) {
  if (config.n < 2) throw Error(ErrorKind::kProtocol, "bench needs at least two nodes");
  BenchResult result;
  std::size_t graph_id = 0;
  for (const auto& f : config.fading) {
    for (std::size_t g = 0; g < config.graphs; ++g) {
      run_graph(config, f, graph_id++, mix_seed(config.seed, g), result.records);
    }
  }
  for (const auto& f : config.fading) result.summaries.push_back(summarize(f, result.records));
  return result;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kBenchCsvHeader << "\n";
  for (const auto& r : records) {
    out << r.graph_id << ',' << r.n << ',' << decimal(r.u) << ',' << decimal(r.f) << ',' << r.seed << ','
        << r.pair_index << ',' << r.s << ',' << r.t << ',' << r.hops_face << ',' << r.hops_void << ','
        << r.hops_face_data << ',' << r.hops_void_data << ',' << (r.compared ? fixed(r.improvement) : "")
        << ',' << (r.face_delivered ? 1 : 0) << ',' << (r.void_delivered ? 1 : 0) << ','
        << fixed(r.avg_nbhd_void) << ',' << fixed(r.avg_deg_gabriel) << ',' << r.skip_reason << "\n";
  }
}

void write_bench_summary(std::ostream& out, const std::vector<BenchSummary>& summaries) {
  for (const auto& s : summaries) {
    out << "f=" << decimal(s.f) << " compared=" << s.compared << " skipped=" << s.skipped
        << " mean_improvement=" << fixed(s.mean_improvement)
        << " median_improvement=" << fixed(s.median_improvement)
        << " mean_improvement_data=" << fixed(s.mean_improvement_data)
        << " avg_nbhd_void=" << fixed(s.avg_nbhd_void) << " avg_deg_gabriel=" << fixed(s.avg_deg_gabriel)
        << " memory_ratio=" << fixed(s.memory_ratio()) << " f_times_d=" << fixed(to_double(s.f) * s.avg_deg_gabriel)
        << "\n";
  }
}

}  // namespace voidroute
