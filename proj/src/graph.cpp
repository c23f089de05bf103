#include "bhd/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <string_view>

#include "bhd/error.hpp"

namespace bhd {
namespace {

constexpr std::uint32_t kUnvisited = ~std::uint32_t{0};

bool parse_token(std::string_view token, OriginalId& value) {
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  return ec == std::errc{} && ptr == token.data() + token.size() && value >= 0;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

// Component label per node, labels assigned in order of the lowest node id.
std::vector<std::uint32_t> label_components(std::span<const std::uint64_t> offsets,
                                            std::span<const NodeId> adj,
                                            std::uint32_t& count) {
  const std::size_t n = offsets.size() - 1;
  std::vector<std::uint32_t> label(n, kUnvisited);
  std::vector<NodeId> stack;
  count = 0;
  for (NodeId root = 0; root < n; ++root) {
    if (label[root] != kUnvisited) continue;
    label[root] = count;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId v = stack.back();
      stack.pop_back();
      for (auto k = offsets[v]; k < offsets[v + 1]; ++k) {
        NodeId x = adj[k];
        if (label[x] == kUnvisited) {
          label[x] = count;
          stack.push_back(x);
        }
      }
    }
    ++count;
  }
  return label;
}

bool two_colorable(std::span<const std::uint64_t> offsets, std::span<const NodeId> adj) {
  const std::size_t n = offsets.size() - 1;
  std::vector<std::int8_t> color(n, -1);
  std::queue<NodeId> queue;
  for (NodeId root = 0; root < n; ++root) {
    if (color[root] >= 0) continue;
    color[root] = 0;
    queue.push(root);
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop();
      for (auto k = offsets[v]; k < offsets[v + 1]; ++k) {
        NodeId x = adj[k];
        if (color[x] < 0) {
          color[x] = static_cast<std::int8_t>(1 - color[v]);
          queue.push(x);
        } else if (color[x] == color[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

EdgeList parse_edge_list(std::istream& in) {
  EdgeList edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].front() == '#' || tokens[0].front() == '%') continue;
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected 2 tokens, got " + std::to_string(tokens.size()));
    }
    OriginalId u = 0, v = 0;
    if (!parse_token(tokens[0], u) || !parse_token(tokens[1], v)) {
      throw ParseError(line_no, "node ids must be non-negative integers");
    }
    edges.pairs.emplace_back(u, v);
  }
  return edges;
}

EdgeList read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  try {
    return parse_edge_list(in);
  } catch (const ParseError& e) {
    throw DataError(path + ":" + e.what());
  }
}

Graph::Graph(std::vector<std::uint64_t> offsets, std::vector<NodeId> neighbors,
             std::vector<OriginalId> original_ids)
    : offsets_(std::move(offsets)),
      neighbors_(std::move(neighbors)),
      original_ids_(std::move(original_ids)) {
  const std::size_t n = offsets_.size() - 1;
  degree_.resize(n);
  index_.reserve(n);
  min_degree_ = n ? ~std::uint32_t{0} : 0;
  for (NodeId v = 0; v < n; ++v) {
    degree_[v] = static_cast<std::uint32_t>(offsets_[v + 1] - offsets_[v]);
    min_degree_ = std::min(min_degree_, degree_[v]);
    max_degree_ = std::max(max_degree_, degree_[v]);
    index_.emplace(original_ids_[v], v);
  }
  label_components(offsets_, neighbors_, num_components_);
  bipartite_ = two_colorable(offsets_, neighbors_);
}

double Graph::average_degree() const {
  return num_nodes() ? 2.0 * static_cast<double>(num_edges()) / num_nodes() : 0.0;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeId> Graph::find(OriginalId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Graph::require_walkable() const {
  if (!connected()) {
    throw DataError("graph has " + std::to_string(num_components_) +
                    " components; approximate methods need a connected graph");
  }
  if (bipartite_) {
    throw DataError("graph is bipartite; approximate methods need a non-bipartite graph");
  }
}

Graph build_graph(const EdgeList& edges) {
  std::vector<OriginalId> ids;
  ids.reserve(edges.pairs.size() * 2);
  for (auto [u, v] : edges.pairs) {
    if (u == v) continue;
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw DataError("edge list is empty after dropping self-loops");

  auto dense = [&ids](OriginalId id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  const std::size_t n = ids.size();
  std::vector<std::pair<NodeId, NodeId>> arcs;
  arcs.reserve(edges.pairs.size() * 2);
  for (auto [u, v] : edges.pairs) {
    if (u == v) continue;
    NodeId a = dense(u), b = dense(v);
    arcs.emplace_back(a, b);
    arcs.emplace_back(b, a);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  std::vector<std::uint64_t> offsets(n + 1, 0);
  std::vector<NodeId> adj;
  adj.reserve(arcs.size());
  for (auto [a, b] : arcs) {
    ++offsets[a + 1];
    adj.push_back(b);
  }
  for (std::size_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];
  return Graph(std::move(offsets), std::move(adj), std::move(ids));
}

Graph largest_connected_component(const Graph& g) {
  std::uint32_t count = 0;
  auto label = label_components(g.offsets_, g.neighbors_, count);
  if (count <= 1) return g;

  // Labels follow ascending dense id, and dense ids follow ascending original
  // id, so the first label reaching the max size holds the smallest id.
  std::vector<std::size_t> size(count, 0);
  for (auto l : label) ++size[l];
  const std::uint32_t keep =
      static_cast<std::uint32_t>(std::max_element(size.begin(), size.end()) - size.begin());

  std::vector<NodeId> remap(g.num_nodes(), kUnvisited);
  std::vector<OriginalId> ids;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (label[v] == keep) {
      remap[v] = static_cast<NodeId>(ids.size());
      ids.push_back(g.original_id(v));
    }
  }
  std::vector<std::uint64_t> offsets{0};
  std::vector<NodeId> adj;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    if (label[v] != keep) continue;
    for (NodeId x : g.neighbors(v)) adj.push_back(remap[x]);
    offsets.push_back(adj.size());
  }
  return Graph(std::move(offsets), std::move(adj), std::move(ids));
}

bool is_bipartite(const Graph& g) { return two_colorable(g.offsets(), g.adjacency()); }

void write_edge_list(const Graph& g, std::ostream& out) {
  for (NodeId u = 0; u < g.num_nodes(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v) out << g.original_id(u) << ' ' << g.original_id(v) << '\n';
    }
  }
}

}  // namespace bhd
