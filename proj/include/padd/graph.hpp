#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <utility>
#include <vector>

namespace padd {

/// Simple undirected graph stored as a symmetric 0/1 adjacency matrix.
class GraphInstance {
 public:
  GraphInstance() = default;
  /// Nodes are 0-based here; the text format is 1-based.
  GraphInstance(std::size_t nodes, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
  static GraphInstance from_adjacency(const std::vector<std::vector<int>>& adjacency);

  std::size_t nodes() const { return nodes_; }
  bool adjacent(std::size_t i, std::size_t j) const { return adjacency_[i * nodes_ + j] != 0; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return neighbors_[i]; }
  std::size_t edge_count() const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::vector<std::vector<int>> adjacency_matrix() const;

  friend bool operator==(const GraphInstance& a, const GraphInstance& b) {
    return a.nodes_ == b.nodes_ && a.adjacency_ == b.adjacency_;
  }

 private:
  std::size_t nodes_ = 0;
  std::vector<std::uint8_t> adjacency_;
  std::vector<std::vector<std::size_t>> neighbors_;
};

/// Reads "d m" followed by m lines "i j" (1-based). Throws ParseError on
/// malformed text and PreconditionError on self-loops or out-of-range ids.
GraphInstance read_edge_list(std::istream& in);
GraphInstance read_graph_file(const std::string& path);
std::string write_edge_list(const GraphInstance& g);

}  // namespace padd
