#include "bhd/push.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "bhd/error.hpp"

namespace bhd {
namespace {

void check_length_params(double lambda, double epsilon) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ParameterError("lambda must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
}

std::int64_t length_from_ratio(double numerator, double lambda, double epsilon) {
  const double one_minus = 1.0 - lambda;
  const double x = std::log(numerator / (epsilon * one_minus * one_minus)) / std::log(1.0 / lambda);
  if (!(x < static_cast<double>(std::numeric_limits<std::int64_t>::max() / 2))) {
    throw ParameterError("truncation length overflows; lambda is too close to 1");
  }
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x)));
}

}  // namespace

std::int64_t universal_length(std::uint64_t n, double lambda, double epsilon) {
  check_length_params(lambda, epsilon);
  return length_from_ratio(12.0 * static_cast<double>(n), lambda, epsilon);
}

std::int64_t pairwise_length(const Graph& g, NodeId s, NodeId t, double lambda, double epsilon) {
  check_length_params(lambda, epsilon);
  const double n = g.num_nodes();
  const double a = 1.0 / g.degree(s) + 1.0 / g.degree(t);
  double squares = 0.0, inv_sum = 0.0;
  for (std::uint32_t d : g.degrees()) {
    const double term = a + 2.0 / d;
    squares += term * term;
    inv_sum += 2.0 / d;
  }
  const double linear = n * a + inv_sum;
  return length_from_ratio(6.0 * squares + 6.0 / n * linear * linear, lambda, epsilon);
}

TruncationParams truncation_params(const Graph& g, NodeId s, NodeId t, double lambda,
                                   double epsilon) {
  TruncationParams p;
  p.ell_universal = universal_length(g.num_nodes(), lambda, epsilon);
  p.ell_pair = pairwise_length(g, s, t, lambda, epsilon);
  p.ell = std::min(p.ell_universal, p.ell_pair);
  p.lambda = lambda;
  p.epsilon = epsilon;
  return p;
}

ProbabilityFrontier::ProbabilityFrontier(const Graph& g, NodeId source)
    : g_(&g), values_(g.num_nodes(), 0.0), next_(g.num_nodes(), 0.0), in_next_(g.num_nodes(), 0) {
  values_[source] = 1.0;
  support_.push_back(source);
}

void ProbabilityFrontier::step() {
  const Graph& g = *g_;
  const NodeId n = g.num_nodes();
  if (!dense_ && support_.size() * 8 > n) {
    dense_ = true;
    support_.resize(n);
    std::iota(support_.begin(), support_.end(), NodeId{0});
  }
  if (dense_) {
    // Pull form: scale in place, then gather.
    for (NodeId u = 0; u < n; ++u) values_[u] /= g.degree(u);
    for (NodeId v = 0; v < n; ++v) {
      double acc = 0.0;
      for (NodeId u : g.neighbors(v)) acc += values_[u];
      next_[v] = acc;
    }
    values_.swap(next_);
    return;
  }
  next_support_.clear();
  for (NodeId j : support_) {
    const double share = values_[j] / g.degree(j);
    values_[j] = 0.0;
    for (NodeId x : g.neighbors(j)) {
      if (!in_next_[x]) {
        in_next_[x] = 1;
        next_support_.push_back(x);
      }
      next_[x] += share;
    }
  }
  for (NodeId x : next_support_) in_next_[x] = 0;
  values_.swap(next_);
  support_.swap(next_support_);
}

double ProbabilityFrontier::mass() const {
  double total = 0.0;
  for (NodeId v : support_) total += values_[v];
  return total;
}

double ResidualVector::at(NodeId v) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), v);
  if (it == nodes.end() || *it != v) return 0.0;
  return values[static_cast<std::size_t>(it - nodes.begin())];
}

ResidualVector push_residual(const Graph& g, NodeId s, NodeId t, std::int64_t ell,
                             const Deadline& deadline) {
  if (ell < 1) throw ParameterError("truncation length must be at least 1");
  const NodeId n = g.num_nodes();
  ProbabilityFrontier from_s(g, s), from_t(g, t);
  std::vector<double> acc(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<NodeId> touched;
  auto mark = [&](NodeId v) {
    if (!seen[v]) {
      seen[v] = 1;
      touched.push_back(v);
    }
  };

  for (std::int64_t i = 0; i < ell; ++i) {
    if (i > 0) {
      deadline.check("push");
      from_s.step();
      from_t.step();
    }
    for (NodeId v : from_s.support()) {
      acc[v] += from_s[v];
      mark(v);
    }
    for (NodeId v : from_t.support()) {
      acc[v] -= from_t[v];
      mark(v);
    }
  }

  std::sort(touched.begin(), touched.end());
  ResidualVector h;
  h.n = n;
  h.nodes.reserve(touched.size());
  h.values.reserve(touched.size());
  for (NodeId v : touched) {
    h.nodes.push_back(v);
    h.values.push_back(acc[v] / g.degree(v));
  }
  return h;
}

double beta_from_residual(const ResidualVector& h, NodeId n) {
  double squares = 0.0, sum = 0.0;
  for (double x : h.values) {
    squares += x * x;
    sum += x;
  }
  return squares - sum * sum / n;
}

void check_pair_query(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                      double epsilon) {
  if (s >= g.num_nodes() || t >= g.num_nodes()) throw ParameterError("node id out of range");
  if (s == t) throw ParameterError("pairwise query needs distinct nodes");
  g.require_walkable();
  check_length_params(spectral.lambda, epsilon);
}

namespace {

Estimate run_push(const Graph& g, Method method, NodeId s, NodeId t, std::int64_t ell,
                  double epsilon, const Deadline& deadline) {
  const auto start = Clock::now();
  ResidualVector h = push_residual(g, s, t, ell, deadline);
  Estimate e;
  e.value = beta_from_residual(h, g.num_nodes());
  e.method = method;
  e.work = static_cast<std::uint64_t>(ell);
  e.ell = ell;
  e.epsilon = epsilon;
  e.touched = h.nodes.size();
  e.elapsed_ms = elapsed_ms_since(start);
  return e;
}

}  // namespace

Estimate query_push(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                    double epsilon, const Deadline& deadline) {
  check_pair_query(g, spectral, s, t, epsilon);
  return run_push(g, Method::push, s, t, universal_length(g.num_nodes(), spectral.lambda, epsilon),
                  epsilon, deadline);
}

Estimate query_push_plus(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                         double epsilon, const Deadline& deadline) {
  check_pair_query(g, spectral, s, t, epsilon);
  auto params = truncation_params(g, s, t, spectral.lambda, epsilon);
  return run_push(g, Method::push_plus, s, t, params.ell, epsilon, deadline);
}

}  // namespace bhd
