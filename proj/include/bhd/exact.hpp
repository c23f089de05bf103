#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bhd/graph.hpp"

namespace bhd {

// Dense Laplacian pseudoinverse for ground truth on small graphs.
class DenseOracle {
 public:
  static constexpr NodeId kDefaultSizeLimit = 5000;

  NodeId num_nodes() const { return static_cast<NodeId>(lpinv_.rows()); }
  const Eigen::MatrixXd& lpinv() const { return lpinv_; }
  // Diagonal of the squared pseudoinverse, i.e. squared row norms of lpinv.
  const std::vector<double>& lpinv2_diag() const { return lpinv2_diag_; }
  double trace_lpinv2() const { return trace_lpinv2_; }

  friend DenseOracle build_oracle(const Graph& g, NodeId size_limit);

 private:
  Eigen::MatrixXd lpinv_;
  std::vector<double> lpinv2_diag_;
  double trace_lpinv2_ = 0.0;
};

// L^+ = (L + J/n)^-1 - J/n by a dense Cholesky solve. Refuses graphs larger
// than size_limit (ParameterError) and reports a failed factorization, which
// only happens on disconnected input, as NumericError.
DenseOracle build_oracle(const Graph& g, NodeId size_limit = DenseOracle::kDefaultSizeLimit);

// ||L^+ (e_s - e_t)||^2. Bit-for-bit symmetric in (s, t).
double exact_pair(const DenseOracle& o, NodeId s, NodeId t);

// n * (L^2+)_{ss} + tr(L^2+), the sum of exact_pair over all t != s.
double exact_nodal(const DenseOracle& o, NodeId s);

}  // namespace bhd
