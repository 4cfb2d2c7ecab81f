#pragma once

// Paired FACE-2 / VOID-2 route-length benchmark over generated graphs.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "voidroute/graph.h"

namespace voidroute {

struct BenchConfig {
  std::size_t n = 50;
  Coord u = Coord(3, 10);
  std::vector<Coord> fading = {1, 2, 3};
  std::size_t graphs = 5;
  std::size_t pairs = 10;
  std::uint64_t seed = 1;
  std::size_t attempt_cap = 1000000;
};

struct BenchRecord {
  std::size_t graph_id = 0;
  std::size_t n = 0;
  Coord u;
  Coord f;
  std::uint64_t seed = 0;  // generation seed of the graph
  std::size_t pair_index = 0;
  NodeId s = 0;
  NodeId t = 0;
  std::size_t hops_face = 0;
  std::size_t hops_void = 0;
  std::size_t hops_face_data = 0;
  std::size_t hops_void_data = 0;
  bool compared = false;
  double improvement = 0.0;
  bool face_delivered = false;
  bool void_delivered = false;
  double avg_nbhd_void = 0.0;
  double avg_deg_gabriel = 0.0;
  std::string skip_reason;
};

struct BenchSummary {
  Coord f;
  std::size_t compared = 0;
  std::size_t skipped = 0;
  double mean_improvement = 0.0;
  double median_improvement = 0.0;
  double mean_improvement_data = 0.0;
  double avg_nbhd_void = 0.0;
  double avg_deg_gabriel = 0.0;

  double memory_ratio() const { return avg_deg_gabriel > 0 ? avg_nbhd_void / avg_deg_gabriel : 0.0; }
};

struct BenchResult {
  std::vector<BenchRecord> records;
  std::vector<BenchSummary> summaries;  // one per fading factor, in config order
};

// Graph g of every fading factor uses seed mix_seed(config.seed, g), so the
// suites share node placements and differ in the extra links. VOID-2 runs on
// the full graph with build_closure, FACE-2 on the Gabriel subgraph of the
// unit-disk core. Throws Error(kRetryExhausted) from generation.
BenchResult run_bench(const BenchConfig& config);

BenchSummary summarize(const Coord& f, const std::vector<BenchRecord>& records);

// Header row plus one row per record, in (graph_id, pair_index) order.
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);
void write_bench_summary(std::ostream& out, const std::vector<BenchSummary>& summaries);

inline constexpr const char* kBenchCsvHeader =
    "graph_id,n,u,f,seed,pair_index,s,t,hops_face,hops_void,hops_face_data,hops_void_data,"
    "improvement,face_delivered,void_delivered,avg_nbhd_void,avg_deg_gabriel,skip_reason";

}  // namespace voidroute
