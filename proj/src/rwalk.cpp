#include "bhd/rwalk.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "bhd/error.hpp"
#include "bhd/parallel.hpp"
#include "bhd/push.hpp"

namespace bhd {
namespace {

NodeId step_from(const Graph& g, NodeId v, Rng& rng) {
  // Lemire's multiply-shift bounded draw; unbiased, rarely rejects.
  auto nb = g.neighbors(v);
  const std::uint64_t range = nb.size();
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * range;
  auto low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = -range % range;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return nb[static_cast<std::size_t>(m >> 64)];
}

std::uint64_t saturating_ceil(double x) {
  if (!(x < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::ceil(x));
}

void check_sampling_params(double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ParameterError("epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("delta must lie in (0, 1)");
}

// Worker w's share of `total` units split over `workers`.
std::uint64_t share_of(std::uint64_t total, unsigned workers, unsigned w) {
  return total / workers + (w < total % workers ? 1 : 0);
}

}  // namespace

Walk random_walk(const Graph& g, NodeId start, std::int64_t length, Rng& rng) {
  if (length < 0) throw ParameterError("walk length must be non-negative");
  Walk w;
  w.nodes.reserve(static_cast<std::size_t>(length) + 1);
  w.nodes.push_back(start);
  for (std::int64_t i = 0; i < length; ++i) w.nodes.push_back(step_from(g, w.nodes.back(), rng));
  return w;
}

double xi(const Walk& w1, const Walk& w2, const Graph& g) {
  auto a = w1.nodes, b = w2.nodes;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double total = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      const NodeId x = a[i];
      std::size_t ca = 0, cb = 0;
      while (i < a.size() && a[i] == x) ++i, ++ca;
      while (j < b.size() && b[j] == x) ++j, ++cb;
      const double d = g.degree(x);
      total += static_cast<double>(ca * cb) / (d * d);
    }
  }
  return total;
}

double xi_prime(const Walk& w1, const Walk& w2, const Graph& g) {
  double a = 0.0, b = 0.0;
  for (NodeId x : w1.nodes) a += 1.0 / g.degree(x);
  for (NodeId y : w2.nodes) b += 1.0 / g.degree(y);
  return a * b;
}

double z_from_walks(const Graph& g, const Walk& s1, const Walk& s2, const Walk& t1,
                    const Walk& t2) {
  const double z1 = xi(s1, s2, g) + xi(t1, t2, g) - xi(s1, t2, g) - xi(s2, t1, g);
  const double z2 =
      xi_prime(s1, s2, g) + xi_prime(t1, t2, g) - xi_prime(s1, t2, g) - xi_prime(s2, t1, g);
  return z1 - z2 / g.num_nodes();
}

ZSampler::ZSampler(const Graph& g, NodeId s, NodeId t, std::int64_t ell)
    : g_(&g), s_(s), t_(t), ell_(ell), count_(g.num_nodes(), 0), inv_deg_(g.num_nodes()) {
  if (ell < 1) throw ParameterError("ell must be at least 1");
  for (NodeId v = 0; v < g.num_nodes(); ++v) inv_deg_[v] = 1.0 / g.degree(v);
  for (auto* buf : {&s1_, &s2_, &t1_, &t2_}) buf->reserve(static_cast<std::size_t>(ell));
}

void ZSampler::walk_into(NodeId start, Rng& rng, std::vector<NodeId>& out) const {
  out.clear();
  out.push_back(start);
  for (std::int64_t i = 1; i < ell_; ++i) out.push_back(step_from(*g_, out.back(), rng));
}

double ZSampler::operator()(Rng& rng) {
  walk_into(s_, rng, s1_);
  walk_into(s_, rng, s2_);
  walk_into(t_, rng, t1_);
  walk_into(t_, rng, t2_);

  // With signed visit counts a = c(S1) - c(T1) and b = c(S2) - c(T2),
  // Z1 = sum_x a_x b_x / d_x^2 and Z2 = (A(S1) - A(T1)) (A(S2) - A(T2)),
  // where A(W) sums 1/d over the positions of W.
  double a1 = 0.0, a2 = 0.0;
  for (NodeId x : s1_) ++count_[x], a1 += inv_deg_[x];
  for (NodeId x : t1_) --count_[x], a1 -= inv_deg_[x];
  double z1 = 0.0;
  for (NodeId x : s2_) {
    z1 += count_[x] * inv_deg_[x] * inv_deg_[x];
    a2 += inv_deg_[x];
  }
  for (NodeId x : t2_) {
    z1 -= count_[x] * inv_deg_[x] * inv_deg_[x];
    a2 -= inv_deg_[x];
  }
  for (NodeId x : s1_) count_[x] = 0;
  for (NodeId x : t1_) count_[x] = 0;
  return z1 - a1 * a2 / g_->num_nodes();
}

double sample_z(const Graph& g, NodeId s, NodeId t, std::int64_t ell, Rng& rng) {
  ZSampler sampler(g, s, t, ell);
  return sampler(rng);
}

double psi_bound(std::int64_t ell, std::uint32_t min_degree, std::uint64_t n) {
  const double l2 = static_cast<double>(ell) * static_cast<double>(ell);
  const double d2 = static_cast<double>(min_degree) * min_degree;
  return 2.0 * l2 / d2 + 2.0 * l2 / (static_cast<double>(n) * d2);
}

std::uint64_t r_star(std::int64_t ell, std::uint32_t min_degree, std::uint64_t n, double epsilon,
                     double delta) {
  const double psi = psi_bound(ell, min_degree, n);
  return saturating_ceil(psi * psi * std::log(2.0 / delta) / (2.0 * epsilon * epsilon));
}

double bernstein_radius(std::uint64_t k, double var_hat, double psi, double delta) {
  if (k == 0) return std::numeric_limits<double>::infinity();
  const double log_term = std::log(3.0 / delta);
  const double kd = static_cast<double>(k);
  return std::sqrt(2.0 * var_hat * log_term / kd) + 3.0 * psi * log_term / kd;
}

double EstimatorState::variance() const {
  if (k == 0) return 0.0;
  const double m = mean();
  return std::max(0.0, sum_z2 / static_cast<double>(k) - m * m);
}

Estimate query_swf(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                   double epsilon, double delta, const SamplingOptions& opts) {
  check_pair_query(g, spectral, s, t, epsilon);
  check_sampling_params(epsilon, delta);
  const auto start = Clock::now();
  const unsigned jobs = std::max(1u, opts.jobs);
  const unsigned batch = std::max(1u, opts.batch);

  const std::int64_t ell = truncation_params(g, s, t, spectral.lambda, epsilon).ell;
  EstimatorState state;
  state.psi = psi_bound(ell, g.min_degree(), g.num_nodes());
  state.epsilon = epsilon;
  state.delta = delta;
  state.r_star = r_star(ell, g.min_degree(), g.num_nodes(), epsilon, delta);
  const std::uint64_t cap =
      opts.max_samples ? std::min(*opts.max_samples, state.r_star) : state.r_star;

  std::vector<Rng> rngs;
  std::vector<ZSampler> samplers;
  for (unsigned w = 0; w < jobs; ++w) {
    rngs.emplace_back(derive_seed(opts.seed, w));
    samplers.emplace_back(g, s, t, ell);
  }
  std::vector<EstimatorState> partial(jobs);

  bool converged = false;
  while (state.k < cap) {
    opts.deadline.check("swf");
    const std::uint64_t round = std::min<std::uint64_t>(cap - state.k,
                                                        static_cast<std::uint64_t>(batch) * jobs);
    run_workers(jobs, [&](unsigned w) {
      EstimatorState local;
      const std::uint64_t quota = share_of(round, jobs, w);
      for (std::uint64_t i = 0; i < quota; ++i) {
        const double z = samplers[w](rngs[w]);
        assert(std::abs(z) <= state.psi * (1.0 + 1e-9));
        local.add(z);
      }
      partial[w] = local;
    });
    for (const auto& p : partial) state.merge(p);
    if (state.radius() <= epsilon / 2.0) {
      converged = true;
      break;
    }
  }

  Estimate e;
  e.value = state.mean();
  e.method = Method::swf;
  e.work = state.k;
  e.ell = ell;
  e.epsilon = epsilon;
  e.delta = delta;
  e.sample_cap = cap;
  e.capped = !converged && cap < state.r_star;
  e.elapsed_ms = elapsed_ms_since(start);
  return e;
}

StwTally::StwTally(std::int64_t walk_length, NodeId n) : walk_length(walk_length), n(n) {
  const auto cells = static_cast<std::size_t>((walk_length + 1) * (walk_length + 1));
  for (auto* v : {&w, &x, &y, &z, &w_bar, &x_bar, &y_bar, &z_bar}) v->assign(cells, 0);
}

void StwTally::merge(const StwTally& other) {
  r += other.r;
  auto add = [](std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  };
  add(w, other.w);
  add(x, other.x);
  add(y, other.y);
  add(z, other.z);
  add(w_bar, other.w_bar);
  add(x_bar, other.x_bar);
  add(y_bar, other.y_bar);
  add(z_bar, other.z_bar);
  per_sample.merge(other.per_sample);
}

double StwTally::estimate() const {
  if (r == 0) return 0.0;
  // Integer totals first; the four families are sums of counts.
  std::int64_t same = 0, cross = 0;
  for (std::size_t c = 0; c < w.size(); ++c) {
    same += static_cast<std::int64_t>(w[c] + x[c]) - static_cast<std::int64_t>(y[c] + z[c]);
    cross += static_cast<std::int64_t>(w_bar[c] + x_bar[c]) -
             static_cast<std::int64_t>(y_bar[c] + z_bar[c]);
  }
  const double rd = static_cast<double>(r);
  return static_cast<double>(same) / rd - static_cast<double>(cross) / (n * rd);
}

StwTally stw_tally(const Graph& g, NodeId s, NodeId t, std::int64_t walk_length,
                   std::uint64_t r, Rng& rng, const Deadline& deadline) {
  if (walk_length < 0) throw ParameterError("walk length must be non-negative");
  StwTally tally(walk_length, g.num_nodes());
  tally.r = r;
  const auto side = static_cast<std::size_t>(walk_length + 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto accept = [&](double denom) { return unit(rng) * denom < 1.0; };
  std::vector<NodeId> s1, s2, t1, t2;
  auto walk_into = [&](NodeId start, std::vector<NodeId>& out) {
    out.clear();
    out.push_back(start);
    for (std::int64_t i = 0; i < walk_length; ++i) out.push_back(step_from(g, out.back(), rng));
  };

  for (std::uint64_t q = 0; q < r; ++q) {
    if (q % 256 == 0) deadline.check("stw");
    walk_into(s, s1);
    walk_into(s, s2);
    walk_into(t, t1);
    walk_into(t, t2);
    std::int64_t same = 0, cross = 0;
    for (std::size_t i = 0; i < side; ++i) {
      const double di_s = g.degree(s1[i]), di_t = g.degree(t1[i]);
      for (std::size_t j = 0; j < side; ++j) {
        const std::size_t c = i * side + j;
        const NodeId a = s1[i], b = s2[j], u = t1[i], v = t2[j];
        const double dj_s = g.degree(b), dj_t = g.degree(v);
        if (a == b && accept(di_s * di_s)) ++tally.w[c], ++same;
        if (u == v && accept(di_t * di_t)) ++tally.x[c], ++same;
        if (a == v && accept(di_s * di_s)) ++tally.y[c], --same;
        if (u == b && accept(di_t * di_t)) ++tally.z[c], --same;
        if (accept(di_s * dj_s)) ++tally.w_bar[c], ++cross;
        if (accept(di_t * dj_t)) ++tally.x_bar[c], ++cross;
        if (accept(di_s * dj_t)) ++tally.y_bar[c], --cross;
        if (accept(di_t * dj_s)) ++tally.z_bar[c], --cross;
      }
    }
    tally.per_sample.add(static_cast<double>(same) -
                         static_cast<double>(cross) / g.num_nodes());
  }
  return tally;
}

std::uint64_t stw_sample_count(std::int64_t walk_length, double epsilon, double delta) {
  const double l = static_cast<double>(std::max<std::int64_t>(walk_length, 1));
  return saturating_ceil(128.0 * l * l * l * l * std::log(8.0 * l * l / delta) /
                         (epsilon * epsilon));
}

Estimate query_stw(const Graph& g, const SpectralInfo& spectral, NodeId s, NodeId t,
                   double epsilon, double delta, const SamplingOptions& opts) {
  check_pair_query(g, spectral, s, t, epsilon);
  check_sampling_params(epsilon, delta);
  const auto start = Clock::now();
  const unsigned jobs = std::max(1u, opts.jobs);

  const std::int64_t ell = truncation_params(g, s, t, spectral.lambda, epsilon).ell;
  const std::int64_t walk_length = ell - 1;
  const std::uint64_t formula_r = stw_sample_count(walk_length, epsilon, delta);
  const std::uint64_t r = opts.max_samples ? std::min(*opts.max_samples, formula_r) : formula_r;

  std::vector<StwTally> partial(jobs);
  run_workers(jobs, [&](unsigned w) {
    Rng rng(derive_seed(opts.seed, w));
    partial[w] = stw_tally(g, s, t, walk_length, share_of(r, jobs, w), rng, opts.deadline);
  });
  StwTally total(walk_length, g.num_nodes());
  for (const auto& p : partial) total.merge(p);

  Estimate e;
  e.value = total.estimate();
  e.method = Method::stw;
  e.work = r;
  e.ell = ell;
  e.epsilon = epsilon;
  e.delta = delta;
  e.sample_cap = r;
  e.capped = r < formula_r;
  e.elapsed_ms = elapsed_ms_since(start);
  return e;
}

}  // namespace bhd
