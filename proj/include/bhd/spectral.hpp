#pragma once

#include <cstdint>

#include "bhd/graph.hpp"

namespace bhd {

// Spectral quantities the truncation lengths and the nodal sampler need.
struct SpectralInfo {
  double lambda = 0.0;  // max(|lambda_2|, |lambda_n|) of the transition matrix, inflated
  double gamma2 = 0.0;  // algebraic connectivity
  double phi = 0.0;     // pairwise distance upper bound 2 / gamma2^2
};

struct PowerOptions {
  double tol = 1e-6;
  int max_iter = 10000;
  std::uint64_t seed = 0x5eed;
  // Relative inflation applied to the lambda estimate so that it errs high.
  double slack = 0.01;
};

// Largest non-trivial eigenvalue magnitude of Q = D^-1/2 A D^-1/2 (same
// spectrum as P = D^-1 A), i.e. the square root of the dominant eigenvalue of
// Q^2 after deflating the top eigenvector sqrt(d / 2m). The result is
// multiplied by (1 + slack) and capped at 1 - 1e-9.
//
// Throws DataError on disconnected or bipartite graphs and ConvergenceError
// if max_iter is exhausted.
double estimate_lambda(const Graph& g, const PowerOptions& opts = {});

// Second-smallest Laplacian eigenvalue by deflated power iteration on
// (2 * max_degree) I - L.
double estimate_gamma2(const Graph& g, const PowerOptions& opts = {});

// Packs user-supplied or estimated values; phi follows from gamma2.
SpectralInfo make_spectral(double lambda, double gamma2);

// Estimates lambda, and gamma2 only when with_gamma2 is set (it converges
// slowly on graphs with a tiny spectral gap and only the nodal sampler
// needs it). Without it gamma2 and phi are left at 0.
SpectralInfo estimate_spectral(const Graph& g, bool with_gamma2, const PowerOptions& opts = {});

}  // namespace bhd
