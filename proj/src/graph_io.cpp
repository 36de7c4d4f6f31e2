#include "latgossip/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace latgossip {

GraphFormatError::GraphFormatError(std::size_t l, const std::string& what)
    : GraphError("line " + std::to_string(l) + ": " + what), line(l) {}

namespace {

std::vector<std::string> tokens_of(const std::string& raw) {
  std::string line = raw.substr(0, raw.find('#'));
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string tok; ss >> tok;) out.push_back(tok);
  return out;
}

std::uint64_t parse_uint(const std::string& tok, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw GraphFormatError(line, std::string("expected a non-negative integer ") + what +
                                     ", got '" + tok + "'");
  }
  return value;
}

}  // namespace

LatencyGraph read_graph(std::istream& in) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<LatencyGraph> g;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto tokens = tokens_of(raw);
    if (tokens.empty()) continue;
    if (!g) {
      if (tokens.size() != 2 || tokens[0] != "n") {
        throw GraphFormatError(line_no, "expected header 'n <count>'");
      }
      g.emplace(parse_uint(tokens[1], line_no, "node count"));
      continue;
    }
    if (tokens.size() != 3) throw GraphFormatError(line_no, "expected 'u v latency'");
    const auto u = parse_uint(tokens[0], line_no, "node id");
    const auto v = parse_uint(tokens[1], line_no, "node id");
    const auto lat = parse_uint(tokens[2], line_no, "latency");
    if (lat == 0 || lat > std::numeric_limits<Latency>::max()) {
      throw GraphFormatError(line_no, "latency must be a positive 32-bit integer");
    }
    try {
      g->add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), static_cast<Latency>(lat));
    } catch (const GraphError& e) {
      throw GraphFormatError(line_no, e.what());
    }
  }
  if (!g) throw GraphFormatError(line_no, "missing header 'n <count>'");
  return std::move(*g);
}

void write_graph(const LatencyGraph& g, std::ostream& out) {
  out << "n " << g.node_count() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.latency << '\n';
}

LatencyGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path.string());
  return read_graph(in);
}

void save_graph(const LatencyGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file " + path.string());
  write_graph(g, out);
}

}  // namespace latgossip
