#pragma once

#include <cstdint>

#include "bhd/graph.hpp"

// Small deterministic graph families used by tests, benchmarks and the
// Python bindings.
namespace bhd::gen {

Graph complete(NodeId n);
Graph cycle(NodeId n);
Graph path(NodeId n);
Graph star(NodeId leaves);

// G(n, p) drawn from a seeded generator. When require_walkable is set, draws
// are repeated with successive sub-seeds until the graph is connected and
// non-bipartite (every node present, ids 0..n-1).
Graph erdos_renyi(NodeId n, double p, std::uint64_t seed, bool require_walkable = true);

}  // namespace bhd::gen
