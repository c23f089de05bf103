#include "bhd/exact.hpp"

#include <string>

#include "bhd/error.hpp"

namespace bhd {

DenseOracle build_oracle(const Graph& g, NodeId size_limit) {
  const NodeId n = g.num_nodes();
  if (n > size_limit) {
    throw ParameterError("dense oracle refused: n = " + std::to_string(n) + " exceeds limit " +
                         std::to_string(size_limit));
  }
  const double inv_n = 1.0 / n;
  Eigen::MatrixXd shifted = Eigen::MatrixXd::Constant(n, n, inv_n);
  for (NodeId v = 0; v < n; ++v) {
    shifted(v, v) += g.degree(v);
    for (NodeId u : g.neighbors(v)) shifted(v, u) -= 1.0;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(shifted);
  if (llt.info() != Eigen::Success) {
    throw NumericError("L + J/n is not positive definite; is the graph connected?");
  }

  DenseOracle o;
  o.lpinv_ = llt.solve(Eigen::MatrixXd::Identity(n, n));
  o.lpinv_.array() -= inv_n;
  // Symmetrize away solver round-off so that pair queries are exactly
  // symmetric in their arguments.
  o.lpinv_ = 0.5 * (o.lpinv_ + o.lpinv_.transpose()).eval();
  o.lpinv2_diag_.resize(n);
  for (NodeId v = 0; v < n; ++v) {
    o.lpinv2_diag_[v] = o.lpinv_.col(v).squaredNorm();
    o.trace_lpinv2_ += o.lpinv2_diag_[v];
  }
  return o;
}

double exact_pair(const DenseOracle& o, NodeId s, NodeId t) {
  const NodeId n = o.num_nodes();
  if (s >= n || t >= n) throw ParameterError("node id out of range");
  if (s == t) throw ParameterError("pairwise distance needs distinct nodes");
  return (o.lpinv().col(s) - o.lpinv().col(t)).squaredNorm();
}

double exact_nodal(const DenseOracle& o, NodeId s) {
  if (s >= o.num_nodes()) throw ParameterError("node id out of range");
  return o.num_nodes() * o.lpinv2_diag()[s] + o.trace_lpinv2();
}

}  // namespace bhd
