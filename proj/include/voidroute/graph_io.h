#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "voidroute/graph.h"

namespace voidroute {

// Text graph document:
//
//   voidroute-graph 1
//   meta <key> <value>        (zero or more; e.g. u, f, seed, strategy)
//   nodes <n>
//   node <id> <x> <y>         (ids 0..n-1 in order; x, y exact: "p/q", "-3", "0.25")
//   edges <m>
//   edge <a> <b>
//
// Blank lines and lines starting with '#' are ignored.
struct GraphDocument {
  GeometricGraph graph;
  std::map<std::string, std::string> meta;
};

inline constexpr const char* kGraphFormatTag = "voidroute-graph";
inline constexpr int kGraphFormatVersion = 1;

std::string serialize_graph(const GraphDocument& doc);
GraphDocument parse_graph(std::istream& in);
GraphDocument parse_graph(const std::string& text);

GraphDocument read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const GraphDocument& doc);

}  // namespace voidroute
