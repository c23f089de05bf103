#pragma once

#include <cstdint>
#include <vector>

#include "bhd/estimate.hpp"
#include "bhd/graph.hpp"
#include "bhd/spectral.hpp"

namespace bhd {

struct TruncationParams {
  std::int64_t ell_universal = 0;
  std::int64_t ell_pair = 0;
  std::int64_t ell = 0;  // min of the two
  double lambda = 0.0;
  double epsilon = 0.0;
};

// ceil(log(12 n / (eps (1 - lambda)^2)) / log(1 / lambda)), at least 1.
// Truncating the series after this many terms keeps the error below eps / 2
// for every pair.
std::int64_t universal_length(std::uint64_t n, double lambda, double epsilon);

// Pair-specific length built from the degrees of s, t and all nodes; it is
// shorter than the universal one when s and t have high degree.
std::int64_t pairwise_length(const Graph& g, NodeId s, NodeId t, double lambda, double epsilon);

TruncationParams truncation_params(const Graph& g, NodeId s, NodeId t, double lambda,
                                   double epsilon);

// Visit-probability vector p_i(src, .) advanced one hop at a time. Starts
// sparse (value table plus touched list) and switches to a dense pull once
// more than n/8 nodes carry mass.
class ProbabilityFrontier {
 public:
  ProbabilityFrontier(const Graph& g, NodeId source);

  // p_{i+1}(src, x) = sum over neighbors j of x of p_i(src, j) / d_j.
  void step();

  double operator[](NodeId v) const { return values_[v]; }
  bool dense() const { return dense_; }
  // Nodes that may carry mass; every node once dense.
  const std::vector<NodeId>& support() const { return support_; }
  double mass() const;

 private:
  const Graph* g_;
  std::vector<double> values_;
  std::vector<double> next_;
  std::vector<NodeId> support_;
  std::vector<NodeId> next_support_;
  std::vector<char> in_next_;
  bool dense_ = false;
};

// Truncated series h^ell with h_v = sum_{i<ell} (p_i(s,v) - p_i(t,v)) / d_v,
// stored sparsely over the nodes it touched (ascending).
struct ResidualVector {
  NodeId n = 0;
  std::vector<NodeId> nodes;
  std::vector<double> values;

  double at(NodeId v) const;
};

ResidualVector push_residual(const Graph& g, NodeId s, NodeId t, std::int64_t ell,
                             const Deadline& deadline = {});

// ||h||^2 - (sum h)^2 / n.
double beta_from_residual(const ResidualVector& h, NodeId n);

// Truncation at the universal length.
Estimate query_push(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                    double epsilon, const Deadline& deadline = {});

// Truncation at min(universal, pairwise) length.
Estimate query_push_plus(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                         double epsilon, const Deadline& deadline = {});

// Shared precondition check for pairwise queries: ids in range, s != t,
// connected non-bipartite graph, 0 < lambda < 1, epsilon > 0.
void check_pair_query(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                      double epsilon);

}  // namespace bhd
