#include "padd/graph.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "padd/error.hpp"

namespace padd {

GraphInstance::GraphInstance(std::size_t nodes,
                             const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : nodes_(nodes), adjacency_(nodes * nodes, 0), neighbors_(nodes) {
  require(nodes >= 1, "graph needs at least one node");
  for (auto [i, j] : edges) {
    require(i < nodes && j < nodes, "edge endpoint out of range");
    require(i != j, "self-loop on node " + std::to_string(i + 1));
    adjacency_[i * nodes + j] = 1;
    adjacency_[j * nodes + i] = 1;
  }
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = 0; j < nodes; ++j) {
      if (adjacency_[i * nodes + j]) neighbors_[i].push_back(j);
    }
  }
}

GraphInstance GraphInstance::from_adjacency(const std::vector<std::vector<int>>& adjacency) {
  const std::size_t d = adjacency.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < d; ++i) {
    require(adjacency[i].size() == d, "adjacency matrix must be square");
    require(adjacency[i][i] == 0, "self-loop on node " + std::to_string(i + 1));
    for (std::size_t j = 0; j < d; ++j) {
      require(adjacency[i][j] == 0 || adjacency[i][j] == 1, "adjacency entries must be 0 or 1");
      require(adjacency[i][j] == adjacency[j][i], "adjacency matrix must be symmetric");
      if (j > i && adjacency[i][j]) edges.emplace_back(i, j);
    }
  }
  return GraphInstance(d, edges);
}

std::size_t GraphInstance::edge_count() const {
  std::size_t twice = 0;
  for (const auto& n : neighbors_) twice += n.size();
  return twice / 2;
}

std::vector<std::pair<std::size_t, std::size_t>> GraphInstance::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < nodes_; ++i) {
    for (std::size_t j : neighbors_[i]) {
      if (j > i) out.emplace_back(i, j);
    }
  }
  return out;
}

std::vector<std::vector<int>> GraphInstance::adjacency_matrix() const {
  std::vector<std::vector<int>> out(nodes_, std::vector<int>(nodes_, 0));
  for (std::size_t i = 0; i < nodes_; ++i) {
    for (std::size_t j = 0; j < nodes_; ++j) out[i][j] = adjacency_[i * nodes_ + j];
  }
  return out;
}

GraphInstance read_edge_list(std::istream& in) {
  long long d = 0;
  long long m = 0;
  if (!(in >> d >> m)) throw ParseError("graph: expected header line \"d m\"");
  if (d < 1 || m < 0) throw ParseError("graph: header values out of range");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    long long i = 0;
    long long j = 0;
    if (!(in >> i >> j)) throw ParseError("graph: expected " + std::to_string(m) + " edge lines");
    require(i >= 1 && i <= d && j >= 1 && j <= d,
            "graph: node id out of range in edge " + std::to_string(e + 1));
    require(i != j, "graph: self-loop on node " + std::to_string(i));
    edges.emplace_back(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1));
  }
  std::string trailing;
  if (in >> trailing) throw ParseError("graph: unexpected trailing content \"" + trailing + "\"");
  return GraphInstance(static_cast<std::size_t>(d), edges);
}

GraphInstance read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file " + path);
  const bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  if (!is_json) return read_edge_list(in);
  nlohmann::json j;
  try {
    in >> j;
    return GraphInstance::from_adjacency(j.at("adjacency").get<std::vector<std::vector<int>>>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("graph json: ") + e.what());
  }
}

std::string write_edge_list(const GraphInstance& g) {
  std::ostringstream out;
  const auto edges = g.edges();
  out << g.nodes() << ' ' << edges.size() << '\n';
  for (auto [i, j] : edges) out << i + 1 << ' ' << j + 1 << '\n';
  return out.str();
}

}  // namespace padd
