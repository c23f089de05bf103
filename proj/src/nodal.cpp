#include "bhd/nodal.hpp"

#include <cmath>

#include "bhd/error.hpp"
#include "bhd/parallel.hpp"
#include "bhd/rwalk.hpp"

namespace bhd {
namespace {

constexpr std::uint64_t kSubsetStream = 0x5b5e7;

void check_nodal(const Graph& g, NodeId s, double epsilon, double delta) {
  if (s >= g.num_nodes()) throw ParameterError("node id out of range");
  g.require_walkable();
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
}

// Runs SWF from s to every target and sums the estimates in target order.
NodalEstimate sum_pairs(const Graph& g, const SpectralInfo& spectral, NodeId s,
                        const std::vector<NodeId>& targets, double epsilon, double delta,
                        const NodalOptions& opts) {
  std::vector<Estimate> results(targets.size());
  parallel_for(targets.size(), std::max(1u, opts.sampling.jobs), [&](std::size_t i) {
    SamplingOptions pair_opts = opts.sampling;
    pair_opts.jobs = 1;
    pair_opts.seed = pair_seed(opts.sampling.seed, targets[i]);
    results[i] = query_swf(g, spectral, s, targets[i], epsilon, delta, pair_opts);
  });
  NodalEstimate out;
  out.node = s;
  out.pairs_evaluated = targets.size();
  out.per_pair_epsilon = epsilon;
  out.per_pair_delta = delta;
  for (const auto& r : results) {
    out.value += r.value;
    out.samples += r.work;
    out.capped = out.capped || r.capped;
  }
  return out;
}

}  // namespace

std::uint64_t pair_seed(std::uint64_t seed, NodeId t) { return derive_seed(seed, 0x9a1e, t); }

NodalEstimate query_snb(const Graph& g, const SpectralInfo& spectral, NodeId s, double epsilon,
                        double delta, const NodalOptions& opts) {
  check_nodal(g, s, epsilon, delta);
  const auto start = Clock::now();
  std::vector<NodeId> targets;
  targets.reserve(g.num_nodes() - 1);
  for (NodeId t = 0; t < g.num_nodes(); ++t)
    if (t != s) targets.push_back(t);
  const double pair_delta = delta / static_cast<double>(targets.size());
  NodalEstimate out = sum_pairs(g, spectral, s, targets, epsilon, pair_delta, opts);
  out.elapsed_ms = elapsed_ms_since(start);
  return out;
}

std::vector<NodeId> bernoulli_subset(NodeId n, double p, Rng& rng, std::optional<NodeId> exclude) {
  if (!(p > 0.0 && p <= 1.0)) throw ParameterError("subset probability must lie in (0, 1]");
  std::vector<NodeId> subset;
  if (p == 1.0) {
    for (NodeId v = 0; v < n; ++v)
      if (v != exclude) subset.push_back(v);
    return subset;
  }
  std::bernoulli_distribution coin(p);
  for (NodeId v = 0; v < n; ++v) {
    if (v == exclude) continue;
    if (coin(rng)) subset.push_back(v);
  }
  return subset;
}

double subset_probability(NodeId n, double phi, double tau) {
  if (!(phi > 0.0 && tau > 0.0)) throw ParameterError("phi and tau must be positive");
  const double nd = n;
  return std::min(1.0, phi * std::sqrt(std::log(nd)) / (std::sqrt(nd) * tau));
}

NodalEstimate query_snb_plus(const Graph& g, const SpectralInfo& spectral, NodeId s,
                             double epsilon, double delta, const NodalOptions& opts) {
  check_nodal(g, s, epsilon, delta);
  if (!(spectral.phi > 0.0)) throw ParameterError("snb+ needs the distance bound phi (gamma2)");
  const auto start = Clock::now();
  const double theta = epsilon / 2.0;
  const double tau = epsilon / 2.0;
  const double p = subset_probability(g.num_nodes(), spectral.phi, tau);

  Rng rng(derive_seed(opts.sampling.seed, kSubsetStream));
  const auto targets = bernoulli_subset(g.num_nodes(), p, rng, s);
  NodalEstimate out;
  if (!targets.empty()) {
    const double pair_delta = delta / static_cast<double>(targets.size());
    out = sum_pairs(g, spectral, s, targets, theta, pair_delta, opts);
  }
  out.node = s;
  out.value /= p;
  out.sampling_probability = p;
  out.per_pair_epsilon = theta;
  out.elapsed_ms = elapsed_ms_since(start);
  return out;
}

}  // namespace bhd
