#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bhd/estimate.hpp"
#include "bhd/graph.hpp"
#include "bhd/random.hpp"
#include "bhd/spectral.hpp"

namespace bhd {

struct NodalEstimate {
  NodeId node = 0;
  double value = 0.0;
  std::uint64_t pairs_evaluated = 0;
  double sampling_probability = 1.0;
  double per_pair_epsilon = 0.0;
  double per_pair_delta = 0.0;
  // Total Z samples drawn across all pair queries.
  std::uint64_t samples = 0;
  bool capped = false;
  double elapsed_ms = 0.0;
};

// Options for the nodal estimators. `sampling.jobs` workers run pair queries
// concurrently; each pair query itself is single-threaded and seeded from
// (sampling.seed, target node), so results do not depend on the worker count.
struct NodalOptions {
  SamplingOptions sampling;
};

// Sum of SWF estimates to every other node, each at (eps, delta / (n - 1)).
NodalEstimate query_snb(const Graph& g, const SpectralInfo& spectral, NodeId s, double epsilon,
                        double delta, const NodalOptions& opts = {});

// Each of nodes 0..n-1 (except `exclude`) kept independently with
// probability p. p == 1 keeps everything without consuming randomness.
std::vector<NodeId> bernoulli_subset(NodeId n, double p, Rng& rng,
                                     std::optional<NodeId> exclude = std::nullopt);

// phi sqrt(log n) / (sqrt(n) tau), clamped to at most 1.
double subset_probability(NodeId n, double phi, double tau);

// Subset-sampled nodal estimate: theta = tau = eps/2, targets kept with
// subset_probability(n, phi, tau), each pair estimated by SWF at
// (theta, delta / |subset|), sum scaled by 1/p. Needs spectral.phi > 0.
NodalEstimate query_snb_plus(const Graph& g, const SpectralInfo& spectral, NodeId s,
                             double epsilon, double delta, const NodalOptions& opts = {});

// Seed used for the SWF query from s to t inside the nodal estimators.
std::uint64_t pair_seed(std::uint64_t seed, NodeId t);

}  // namespace bhd
