#include "bhd/generators.hpp"

#include <random>

#include "bhd/error.hpp"
#include "bhd/random.hpp"

namespace bhd::gen {

Graph complete(NodeId n) {
  EdgeList e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.pairs.emplace_back(u, v);
  return build_graph(e);
}

Graph cycle(NodeId n) {
  EdgeList e;
  for (NodeId u = 0; u < n; ++u) e.pairs.emplace_back(u, (u + 1) % n);
  return build_graph(e);
}

Graph path(NodeId n) {
  EdgeList e;
  for (NodeId u = 0; u + 1 < n; ++u) e.pairs.emplace_back(u, u + 1);
  return build_graph(e);
}

Graph star(NodeId leaves) {
  EdgeList e;
  for (NodeId u = 1; u <= leaves; ++u) e.pairs.emplace_back(0, u);
  return build_graph(e);
}

Graph erdos_renyi(NodeId n, double p, std::uint64_t seed, bool require_walkable) {
  if (n < 2 || !(p > 0.0 && p <= 1.0)) throw ParameterError("erdos_renyi: need n >= 2, p in (0,1]");
  for (std::uint64_t attempt = 0; attempt < 10000; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::bernoulli_distribution coin(p);
    EdgeList e;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (coin(rng)) e.pairs.emplace_back(u, v);
    if (e.pairs.empty()) continue;
    Graph g = build_graph(e);
    if (!require_walkable) return g;
    if (g.num_nodes() == n && g.connected() && !g.bipartite()) return g;
  }
  throw ParameterError("erdos_renyi: no connected non-bipartite draw; raise p");
}

}  // namespace bhd::gen
