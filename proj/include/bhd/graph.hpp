#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bhd {

using NodeId = std::uint32_t;
using OriginalId = std::int64_t;

// Edge pairs exactly as they appear in the input, before any cleanup.
struct EdgeList {
  std::vector<std::pair<OriginalId, OriginalId>> pairs;
};

// Reads whitespace-separated "u v" lines. Lines starting with '#' or '%' and
// blank lines are skipped. Throws ParseError carrying the 1-based line number.
EdgeList parse_edge_list(std::istream& in);
EdgeList read_edge_list(const std::string& path);

// Immutable simple undirected graph in compressed adjacency form.
//
// Nodes are dense ids 0..n-1 assigned in ascending order of the original ids,
// neighbor lists are sorted ascending. Connectivity and bipartiteness are
// computed once at construction; algorithms that need a connected,
// non-bipartite graph check these flags rather than re-traversing.
class Graph {
 public:
  Graph() = default;

  NodeId num_nodes() const { return static_cast<NodeId>(degree_.size()); }
  std::uint64_t num_edges() const { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::uint32_t degree(NodeId v) const { return degree_[v]; }
  std::span<const std::uint32_t> degrees() const { return degree_; }
  std::span<const std::uint64_t> offsets() const { return offsets_; }
  std::span<const NodeId> adjacency() const { return neighbors_; }

  std::uint32_t min_degree() const { return min_degree_; }
  std::uint32_t max_degree() const { return max_degree_; }
  double average_degree() const;

  bool has_edge(NodeId u, NodeId v) const;

  OriginalId original_id(NodeId v) const { return original_ids_[v]; }
  std::span<const OriginalId> original_ids() const { return original_ids_; }
  std::optional<NodeId> find(OriginalId id) const;

  // Number of connected components; the graph is connected iff this is 1.
  std::uint32_t num_components() const { return num_components_; }
  bool connected() const { return num_components_ == 1; }
  bool bipartite() const { return bipartite_; }

  // Throws DataError unless the graph is connected and non-bipartite, the
  // precondition of every approximate estimator.
  void require_walkable() const;

  friend Graph build_graph(const EdgeList& edges);
  friend Graph largest_connected_component(const Graph& g);

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ &&
           a.original_ids_ == b.original_ids_;
  }

 private:
  // Takes symmetric, sorted, duplicate-free adjacency.
  Graph(std::vector<std::uint64_t> offsets, std::vector<NodeId> neighbors,
        std::vector<OriginalId> original_ids);

  std::vector<std::uint64_t> offsets_{0};
  std::vector<NodeId> neighbors_;
  std::vector<std::uint32_t> degree_;
  std::vector<OriginalId> original_ids_;
  std::unordered_map<OriginalId, NodeId> index_;
  std::uint32_t min_degree_ = 0;
  std::uint32_t max_degree_ = 0;
  std::uint32_t num_components_ = 0;
  bool bipartite_ = false;
};

// Drops self-loops, collapses duplicate and reversed edges, symmetrizes and
// remaps ids densely. Throws DataError if nothing is left.
Graph build_graph(const EdgeList& edges);

// Induced subgraph on the largest component. Ties go to the component holding
// the smallest original id.
Graph largest_connected_component(const Graph& g);

// Breadth-first 2-coloring.
bool is_bipartite(const Graph& g);

// Writes "u v" per edge with u < v, in original ids.
void write_edge_list(const Graph& g, std::ostream& out);

}  // namespace bhd
