#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "latgossip/graph.hpp"

namespace latgossip {

/// Edge-list text format:
///   n <count>
///   u v latency        (one undirected edge per line, listed once)
/// Blank lines are ignored and '#' starts a comment.
class GraphFormatError : public GraphError {
 public:
  GraphFormatError(std::size_t line, const std::string& what);
  std::size_t line;
};

LatencyGraph read_graph(std::istream& in);
void write_graph(const LatencyGraph& g, std::ostream& out);

LatencyGraph load_graph(const std::filesystem::path& path);
void save_graph(const LatencyGraph& g, const std::filesystem::path& path);

}  // namespace latgossip
