#pragma once

#include <cstdint>
#include <vector>

#include "bhd/estimate.hpp"
#include "bhd/graph.hpp"
#include "bhd/random.hpp"
#include "bhd/spectral.hpp"

namespace bhd {

// Positions 0..length of a simple random walk; nodes[0] is the start.
struct Walk {
  std::vector<NodeId> nodes;
};

Walk random_walk(const Graph& g, NodeId start, std::int64_t length, Rng& rng);

// Sum over position pairs (x in w1, y in w2) with x == y of 1 / d_x^2.
double xi(const Walk& w1, const Walk& w2, const Graph& g);
// Sum over all position pairs of 1 / (d_x d_y).
double xi_prime(const Walk& w1, const Walk& w2, const Graph& g);

// Z = Z1 - Z2 / n for walks S1, S2 from s and T1, T2 from t, where
// Z1 = xi(S1,S2) + xi(T1,T2) - xi(S1,T2) - xi(S2,T1) and Z2 is the same
// combination of xi_prime.
double z_from_walks(const Graph& g, const Walk& s1, const Walk& s2, const Walk& t1,
                    const Walk& t2);

// Draws S1, S2, T1, T2 (in that order) of ell positions each, i.e. walks of
// length ell - 1, and returns Z. Its expectation is the series truncated at
// ell terms, the same quantity push_residual evaluates.
double sample_z(const Graph& g, NodeId s, NodeId t, std::int64_t ell, Rng& rng);

// Reusable sampler for Z with an O(n) scratch table; one per thread.
class ZSampler {
 public:
  ZSampler(const Graph& g, NodeId s, NodeId t, std::int64_t ell);

  double operator()(Rng& rng);

 private:
  void walk_into(NodeId start, Rng& rng, std::vector<NodeId>& out) const;

  const Graph* g_;
  NodeId s_, t_;
  std::int64_t ell_;
  std::vector<std::int32_t> count_;
  std::vector<double> inv_deg_;
  std::vector<NodeId> s1_, s2_, t1_, t2_;
};

// Range bound on |Z|: 2 ell^2 / dmin^2 + 2 ell^2 / (n dmin^2).
double psi_bound(std::int64_t ell, std::uint32_t min_degree, std::uint64_t n);

// ceil(psi^2 log(2 / delta) / (2 eps^2)), saturating at UINT64_MAX.
std::uint64_t r_star(std::int64_t ell, std::uint32_t min_degree, std::uint64_t n, double epsilon,
                     double delta);

// Empirical Bernstein radius sqrt(2 var log(3/delta) / k) + 3 psi log(3/delta) / k.
double bernstein_radius(std::uint64_t k, double var_hat, double psi, double delta);

// Running moments of a stream of samples.
struct EstimatorState {
  std::uint64_t k = 0;
  double sum_z = 0.0;
  double sum_z2 = 0.0;
  double psi = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  std::uint64_t r_star = 0;

  void add(double z) {
    ++k;
    sum_z += z;
    sum_z2 += z * z;
  }
  void merge(const EstimatorState& other) {
    k += other.k;
    sum_z += other.sum_z;
    sum_z2 += other.sum_z2;
  }
  double mean() const { return k ? sum_z / static_cast<double>(k) : 0.0; }
  // Population variance sum_z2/k - mean^2, clamped at 0.
  double variance() const;
  double radius() const { return bernstein_radius(k, variance(), psi, delta); }
};

// Sampling with feedback: draws Z in batches until the Bernstein radius is at
// most eps/2 or r* samples (or opts.max_samples, if smaller) are reached.
// |result - beta(s,t)| <= eps with probability at least 1 - delta when the
// stopping rule (not a cap) ends the run.
Estimate query_swf(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                   double epsilon, double delta, const SamplingOptions& opts = {});

// Per-length acceptance counters of the truncated-walk sampler. Index
// (i, j) lives at i * (walk_length + 1) + j.
struct StwTally {
  std::int64_t walk_length = 0;
  std::uint64_t r = 0;
  NodeId n = 0;
  std::vector<std::uint64_t> w, x, y, z;
  std::vector<std::uint64_t> w_bar, x_bar, y_bar, z_bar;
  // One value per walk quadruple; its mean equals estimate().
  EstimatorState per_sample;

  explicit StwTally(std::int64_t walk_length = 0, NodeId n = 0);
  void merge(const StwTally& other);
  // sum_{i,j} (W+X-Y-Z)/r - (W̄+X̄-Ȳ-Z̄)/(n r)
  double estimate() const;
};

// Runs r walk quadruples of the given length from s and t and applies the
// Bernoulli acceptance tests for every prefix-length pair (i, j). Coins are
// drawn from rng after the four walks, in (i, j) row-major order: W, X, Y, Z
// (each only when its end nodes coincide), then W̄, X̄, Ȳ, Z̄.
StwTally stw_tally(const Graph& g, NodeId s, NodeId t, std::int64_t walk_length,
                   std::uint64_t r, Rng& rng, const Deadline& deadline = {});

// ceil(128 L^4 log(8 L^2 / delta) / eps^2) with L = max(walk_length, 1).
std::uint64_t stw_sample_count(std::int64_t walk_length, double epsilon, double delta);

// Truncated-walk sampler with walk length min(universal, pairwise) - 1 and
// r from stw_sample_count, reduced to opts.max_samples when that is smaller.
Estimate query_stw(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                   double epsilon, double delta, const SamplingOptions& opts = {});

}  // namespace bhd
