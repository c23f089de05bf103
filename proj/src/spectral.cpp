#include "bhd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include <Eigen/Dense>

#include "bhd/error.hpp"
#include "bhd/random.hpp"

namespace bhd {
namespace {

using Vec = std::vector<double>;

double dot(const Vec& a, const Vec& b) { return std::inner_product(a.begin(), a.end(), b.begin(), 0.0); }

void axpy(double alpha, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

// y = Q x with Q = D^-1/2 A D^-1/2.
void apply_q(const Graph& g, const Vec& inv_sqrt_deg, const Vec& x, Vec& y) {
  const NodeId n = g.num_nodes();
  Vec scaled(n);
  for (NodeId v = 0; v < n; ++v) scaled[v] = x[v] * inv_sqrt_deg[v];
  for (NodeId v = 0; v < n; ++v) {
    double acc = 0.0;
    for (NodeId u : g.neighbors(v)) acc += scaled[u];
    y[v] = acc * inv_sqrt_deg[v];
  }
}

// y = L x.
void apply_laplacian(const Graph& g, const Vec& x, Vec& y) {
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    double acc = g.degree(v) * x[v];
    for (NodeId u : g.neighbors(v)) acc -= x[u];
    y[v] = acc;
  }
}

struct Eigenpair {
  double value;
  Vec vector;
};

// Orthonormalizes block[k] against `deflate` and block[0..k-1] (two passes of
// Gram-Schmidt). Returns false if the column collapses.
bool orthonormalize(std::vector<Vec>& block, std::size_t k, const Vec& deflate) {
  Vec& x = block[k];
  const double before = std::sqrt(dot(x, x));
  for (int pass = 0; pass < 2; ++pass) {
    axpy(-dot(deflate, x), deflate, x);
    for (std::size_t j = 0; j < k; ++j) axpy(-dot(block[j], x), block[j], x);
  }
  const double after = std::sqrt(dot(x, x));
  if (!(after > 1e-10 * before)) return false;
  for (double& v : x) v /= after;
  return true;
}

// Block power (subspace) iteration for the dominant eigenpair of a symmetric
// operator whose spectrum on the complement of `deflate` is non-negative.
// `op` is the unshifted operator M; iteration runs on shift*I + sign*M with a
// Rayleigh-Ritz step on M each round, so eigenvalues clustered at the top of
// the spectrum do not stall convergence. Convergence is declared when the
// top Ritz pair satisfies ||M y - theta y|| <= tol * max(|theta|, 1e-3).
Eigenpair deflated_power(NodeId n, const std::function<void(const Vec&, Vec&)>& op,
                         double shift, double sign, const Vec& deflate,
                         const PowerOptions& opts, std::uint64_t stream) {
  constexpr std::size_t kMaxBlock = 4;
  const std::size_t b = std::min<std::size_t>(kMaxBlock, n - 1);
  Rng rng(derive_seed(opts.seed, stream));
  std::normal_distribution<double> normal;
  auto fill_random = [&](Vec& x) {
    for (double& v : x) v = normal(rng);
  };

  std::vector<Vec> x(b, Vec(n)), mx(b, Vec(n)), next(b, Vec(n));
  for (std::size_t k = 0; k < b; ++k) {
    do fill_random(x[k]);
    while (!orthonormalize(x, k, deflate));
  }

  Vec y(n), my(n);
  double theta = 0.0, residual = 0.0;
  for (int it = 0; it < opts.max_iter; ++it) {
    for (std::size_t k = 0; k < b; ++k) op(x[k], mx[k]);
    Eigen::MatrixXd h(b, b);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = i; j < b; ++j) h(i, j) = h(j, i) = 0.5 * (dot(x[i], mx[j]) + dot(x[j], mx[i]));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    // Ritz values ordered by the shifted operator, dominant first.
    std::vector<Eigen::Index> order(b);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index c) {
      return shift + sign * es.eigenvalues()(a) > shift + sign * es.eigenvalues()(c);
    });

    // Rotate the block onto the Ritz basis; column 0 is the top Ritz vector.
    for (std::size_t k = 0; k < b; ++k) {
      std::fill(next[k].begin(), next[k].end(), 0.0);
      std::fill(my.begin(), my.end(), 0.0);
      for (std::size_t j = 0; j < b; ++j) {
        const double c = es.eigenvectors()(j, order[k]);
        axpy(c, x[j], next[k]);
        axpy(c, mx[j], my);
      }
      if (k == 0) {
        y = next[0];
        theta = es.eigenvalues()(order[0]);
        residual = 0.0;
        for (NodeId i = 0; i < n; ++i) {
          const double r = my[i] - theta * y[i];
          residual += r * r;
        }
        residual = std::sqrt(residual);
        if (residual <= opts.tol * std::max(std::abs(theta), 1e-3)) return {theta, y};
      }
      for (NodeId i = 0; i < n; ++i) next[k][i] = shift * next[k][i] + sign * my[i];
    }
    std::swap(x, next);
    for (std::size_t k = 0; k < b; ++k) {
      while (!orthonormalize(x, k, deflate)) fill_random(x[k]);
    }
  }
  throw ConvergenceError("power iteration did not converge in " + std::to_string(opts.max_iter) +
                             " iterations",
                         y, residual);
}

}  // namespace

double estimate_lambda(const Graph& g, const PowerOptions& opts) {
  g.require_walkable();
  const NodeId n = g.num_nodes();
  if (n < 3) throw DataError("lambda needs at least 3 nodes");

  Vec inv_sqrt_deg(n), top(n);
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  for (NodeId v = 0; v < n; ++v) {
    inv_sqrt_deg[v] = 1.0 / std::sqrt(static_cast<double>(g.degree(v)));
    top[v] = std::sqrt(g.degree(v) / two_m);
  }

  // Q^2 is positive semidefinite and its dominant eigenvalue on the
  // complement of the top eigenvector is max(lambda_2^2, lambda_n^2).
  Vec tmp(n);
  auto q2 = [&](const Vec& x, Vec& y) {
    apply_q(g, inv_sqrt_deg, x, tmp);
    apply_q(g, inv_sqrt_deg, tmp, y);
  };
  const double raw = std::sqrt(std::max(0.0, deflated_power(n, q2, 0.0, +1.0, top, opts, 1).value));
  return std::min(raw * (1.0 + opts.slack), 1.0 - 1e-9);
}

double estimate_gamma2(const Graph& g, const PowerOptions& opts) {
  if (!g.connected()) throw DataError("algebraic connectivity needs a connected graph");
  const NodeId n = g.num_nodes();
  if (n < 2) throw DataError("algebraic connectivity needs at least 2 nodes");

  Vec ones(n, 1.0 / std::sqrt(static_cast<double>(n)));
  auto lap = [&](const Vec& x, Vec& y) { apply_laplacian(g, x, y); };
  const double gamma_max = 2.0 * g.max_degree();
  // Dominant eigenvalue of gamma_max I - L on 1-perp is gamma_max - gamma_2.
  // The residual test is on L itself, so tolerance is relative to gamma_2.
  return deflated_power(n, lap, gamma_max, -1.0, ones, opts, 3).value;
}

SpectralInfo make_spectral(double lambda, double gamma2) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw ParameterError("lambda must lie in (0, 1)");
  if (!(gamma2 > 0.0)) throw ParameterError("gamma2 must be positive");
  return {lambda, gamma2, 2.0 / (gamma2 * gamma2)};
}

SpectralInfo estimate_spectral(const Graph& g, bool with_gamma2, const PowerOptions& opts) {
  SpectralInfo info;
  info.lambda = estimate_lambda(g, opts);
  if (with_gamma2) {
    info.gamma2 = estimate_gamma2(g, opts);
    info.phi = 2.0 / (info.gamma2 * info.gamma2);
  }
  return info;
}

}  // namespace bhd
