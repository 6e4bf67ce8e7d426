#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "bbmis/error.hpp"
#include "bbmis/graph.hpp"

namespace bbmis {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

std::size_t parse_count(std::string_view tok, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError("expected a non-negative integer, got '" + std::string(tok) + "'", line_no);
  return value;
}

}  // namespace

Graph read_dimacs(std::string_view text) {
  bool have_header = false;
  std::size_t n = 0;
  std::size_t declared_m = 0;
  std::size_t header_line = 0;
  std::vector<Graph::Edge> edges;
  std::unordered_set<std::uint64_t> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    const auto tok = split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;

    if (tok[0] == "p") {
      if (have_header) throw ParseError("duplicate 'p' line", line_no);
      if (tok.size() != 4 || tok[1] != "edge") throw ParseError("expected 'p edge <n> <m>'", line_no);
      n = parse_count(tok[2], line_no);
      declared_m = parse_count(tok[3], line_no);
      if (declared_m > pair_count(n)) throw ParseError("edge count exceeds C(n, 2)", line_no);
      have_header = true;
      header_line = line_no;
    } else if (tok[0] == "e") {
      if (!have_header) throw ParseError("edge line before 'p edge' header", line_no);
      if (tok.size() != 3) throw ParseError("expected 'e <u> <v>'", line_no);
      const std::size_t u = parse_count(tok[1], line_no);
      const std::size_t v = parse_count(tok[2], line_no);
      if (u < 1 || u > n || v < 1 || v > n) throw ParseError("vertex index out of range 1..n", line_no);
      if (u == v) throw ParseError("self-loop on vertex " + std::to_string(u), line_no);
      const std::size_t a = std::min(u, v) - 1;
      const std::size_t b = std::max(u, v) - 1;
      if (!seen.insert(static_cast<std::uint64_t>(a) * n + b).second)
        throw ParseError("duplicate edge " + std::to_string(u) + " " + std::to_string(v), line_no);
      edges.emplace_back(a, b);
    } else {
      throw ParseError("unknown line type '" + std::string(tok[0]) + "'", line_no);
    }
    if (end == text.size()) break;
  }

  if (!have_header) throw ParseError("missing 'p edge' header", 0);
  if (edges.size() != declared_m)
    throw ParseError("header declares " + std::to_string(declared_m) + " edges, found " +
                         std::to_string(edges.size()),
                     header_line);
  return Graph(n, edges);
}

std::string write_dimacs(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.order() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

Graph read_dimacs_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open graph file '" + path + "'", 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_dimacs(buf.str());
}

void write_dimacs_file(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write graph file '" + path + "'");
  out << write_dimacs(g);
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

}  // namespace bbmis
