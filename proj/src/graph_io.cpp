#include "voidroute/graph_io.h"

#include <fstream>
#include <sstream>

namespace voidroute {

std::string serialize_graph(const GraphDocument& doc) {
  std::ostringstream out;
  out << kGraphFormatTag << ' ' << kGraphFormatVersion << '\n';
  for (const auto& [key, value] : doc.meta) out << "meta " << key << ' ' << value << '\n';
  const auto& g = doc.graph;
  out << "nodes " << g.node_count() << '\n';
  for (NodeId i = 0; i < g.node_count(); ++i) {
    const auto& p = g.position(i);
    out << "node " << i << ' ' << format_coord(p.x) << ' ' << format_coord(p.y) << '\n';
  }
  out << "edges " << g.edge_count() << '\n';
  for (const auto& e : g.edges()) out << "edge " << e.a << ' ' << e.b << '\n';
  return out.str();
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& why) {
  throw Error(ErrorKind::kParse, "graph line " + std::to_string(line) + ": " + why);
}

std::uint64_t parse_count(std::size_t line, const std::string& token) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
    fail(line, "expected a non-negative integer, got '" + token + "'");
  }
  return std::stoull(token);
}

}  // namespace

GraphDocument parse_graph(std::istream& in) {
  GraphDocument doc;
  std::vector<Point> positions;
  std::vector<Edge> edges;
  std::size_t declared_nodes = 0, declared_edges = 0;
  bool saw_header = false, saw_nodes = false, saw_edges = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::istringstream line(raw);
    std::string word;
    if (!(line >> word) || word.front() == '#') continue;

    std::vector<std::string> args;
    for (std::string tok; line >> tok;) args.push_back(tok);

    if (!saw_header) {
      if (word != kGraphFormatTag || args.size() != 1) fail(line_no, "missing format tag");
      if (parse_count(line_no, args[0]) != kGraphFormatVersion) fail(line_no, "unsupported version");
      saw_header = true;
    } else if (word == "meta") {
      if (args.size() != 2 || saw_nodes) fail(line_no, "meta needs key and value before nodes");
      doc.meta[args[0]] = args[1];
    } else if (word == "nodes") {
      if (args.size() != 1 || saw_nodes) fail(line_no, "bad nodes record");
      declared_nodes = parse_count(line_no, args[0]);
      saw_nodes = true;
    } else if (word == "node") {
      if (!saw_nodes || saw_edges || args.size() != 3) fail(line_no, "bad node record");
      if (parse_count(line_no, args[0]) != positions.size()) fail(line_no, "node ids must be dense and ordered");
      positions.emplace_back(parse_coord(args[1]), parse_coord(args[2]));
    } else if (word == "edges") {
      if (args.size() != 1 || !saw_nodes || saw_edges) fail(line_no, "bad edges record");
      declared_edges = parse_count(line_no, args[0]);
      saw_edges = true;
    } else if (word == "edge") {
      if (!saw_edges || args.size() != 2) fail(line_no, "bad edge record");
      const auto a = parse_count(line_no, args[0]);
      const auto b = parse_count(line_no, args[1]);
      if (a >= declared_nodes || b >= declared_nodes) fail(line_no, "edge endpoint out of range");
      edges.emplace_back(static_cast<NodeId>(a), static_cast<NodeId>(b));
    } else {
      fail(line_no, "unknown record '" + word + "'");
    }
  }
  if (!saw_header) fail(line_no, "empty document");
  if (positions.size() != declared_nodes) fail(line_no, "node count mismatch");
  if (edges.size() != declared_edges) fail(line_no, "edge count mismatch");
  doc.graph = GeometricGraph(std::move(positions), std::move(edges));
  return doc;
}

GraphDocument parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

GraphDocument read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kParse, "cannot open " + path);
  return parse_graph(in);
}

void write_graph_file(const std::string& path, const GraphDocument& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kParse, "cannot write " + path);
  out << serialize_graph(doc);
}

}  // namespace voidroute
