#include <doctest.h>

#include <cmath>

#include "bhd/error.hpp"
#include "bhd/exact.hpp"
#include "bhd/generators.hpp"
#include "bhd/nodal.hpp"
#include "bhd/rwalk.hpp"

using namespace bhd;

namespace {

NodalOptions with_seed(std::uint64_t seed, unsigned jobs = 1) {
  NodalOptions o;
  o.sampling.seed = seed;
  o.sampling.jobs = jobs;
  return o;
}

}  // namespace

TEST_CASE("query_snb on K3") {
  Graph k3 = gen::complete(3);
  SpectralInfo sp = estimate_spectral(k3, true);
  NodalEstimate e = query_snb(k3, sp, 0, 0.05, 0.01, with_seed(4));
  CHECK(std::abs(e.value - 4.0 / 9.0) <= 3 * 0.05);
  CHECK(e.pairs_evaluated == 2);
  CHECK(e.sampling_probability == 1.0);
  CHECK(e.per_pair_delta == doctest::Approx(0.005));
  CHECK_FALSE(e.capped);
}

TEST_CASE("query_snb is the plain sum of its pair queries") {
  Graph g = gen::erdos_renyi(8, 0.5, 2);
  SpectralInfo sp = estimate_spectral(g, false);
  NodalOptions o = with_seed(17);
  o.sampling.max_samples = 3000;
  NodalEstimate e = query_snb(g, sp, 3, 0.2, 0.05, o);
  CHECK(e.pairs_evaluated == g.num_nodes() - 1);
  double sum = 0.0;
  std::uint64_t samples = 0;
  for (NodeId t = 0; t < g.num_nodes(); ++t) {
    if (t == 3) continue;
    SamplingOptions so = o.sampling;
    so.seed = pair_seed(17, t);
    Estimate p = query_swf(g, sp, 3, t, 0.2, 0.05 / (g.num_nodes() - 1), so);
    sum += p.value;
    samples += p.work;
  }
  CHECK(e.value == sum);
  CHECK(e.samples == samples);
}

TEST_CASE("nodal results do not depend on the worker count") {
  Graph g = gen::erdos_renyi(10, 0.4, 6);
  SpectralInfo sp = estimate_spectral(g, true);
  NodalOptions one = with_seed(5, 1), three = with_seed(5, 3);
  one.sampling.max_samples = three.sampling.max_samples = 2000;
  CHECK(query_snb(g, sp, 0, 0.2, 0.05, one).value == query_snb(g, sp, 0, 0.2, 0.05, three).value);
  CHECK(query_snb_plus(g, sp, 0, 0.2, 0.05, one).value ==
        query_snb_plus(g, sp, 0, 0.2, 0.05, three).value);
}

TEST_CASE("bernoulli_subset") {
  Rng rng(1);
  auto all = bernoulli_subset(10, 1.0, rng);
  CHECK(all.size() == 10);
  auto without = bernoulli_subset(10, 1.0, rng, NodeId{4});
  CHECK(without.size() == 9);
  CHECK(std::find(without.begin(), without.end(), 4) == without.end());

  Rng a(9), b(9);
  CHECK(bernoulli_subset(500, 0.3, a) == bernoulli_subset(500, 0.3, b));

  Rng c(12);
  const double n = 1e4, p = 0.5;
  const auto half = bernoulli_subset(10000, p, c);
  CHECK(std::abs(double(half.size()) - n * p) <= 4 * std::sqrt(n * p * (1 - p)));

  CHECK_THROWS_AS(bernoulli_subset(10, 0.0, rng), ParameterError);
  CHECK_THROWS_AS(bernoulli_subset(10, 1.5, rng), ParameterError);
}

TEST_CASE("subset_probability") {
  CHECK(subset_probability(1000, 0.01, 0.05) ==
        doctest::Approx(0.01 * std::sqrt(std::log(1000.0)) / (std::sqrt(1000.0) * 0.05)));
  CHECK(subset_probability(3, 2.0 / 9.0, 0.025) == 1.0);
  CHECK_THROWS_AS(subset_probability(10, 0.0, 0.1), ParameterError);
}

TEST_CASE("snb+ with a full subset equals snb at half epsilon") {
  Graph k3 = gen::complete(3);
  SpectralInfo sp = estimate_spectral(k3, true);
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    NodalEstimate plus = query_snb_plus(k3, sp, 1, 0.1, 0.01, with_seed(seed));
    NodalEstimate base = query_snb(k3, sp, 1, 0.05, 0.01, with_seed(seed));
    CHECK(plus.sampling_probability == 1.0);
    CHECK(plus.per_pair_epsilon == 0.05);
    CHECK(plus.value == base.value);
    CHECK(plus.pairs_evaluated == 2);
  }
}

TEST_CASE("snb+ needs gamma2") {
  Graph k3 = gen::complete(3);
  CHECK_THROWS_AS(query_snb_plus(k3, estimate_spectral(k3, false), 0, 0.1, 0.01), ParameterError);
  CHECK_THROWS_AS(query_snb(k3, estimate_spectral(k3, false), 3, 0.1, 0.01), ParameterError);
}

TEST_CASE("subset sum scaled by 1/p is unbiased") {
  // Exact pair values stand in for the sampler, isolating the subset step.
  Graph g = gen::erdos_renyi(100, 0.1, 21);
  DenseOracle o = build_oracle(g);
  const NodeId s = 7;
  const double p = 0.3;
  const int reps = 200;
  double sum = 0.0, sum2 = 0.0, expected_size = 0.0;
  for (int r = 0; r < reps; ++r) {
    Rng rng(derive_seed(99, r));
    double x = 0.0;
    const auto subset = bernoulli_subset(g.num_nodes(), p, rng, s);
    for (NodeId t : subset) x += exact_pair(o, s, t);
    x /= p;
    sum += x;
    sum2 += x * x;
    expected_size += subset.size();
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum2 / reps - mean * mean) / reps);
  CHECK(std::abs(mean - exact_nodal(o, s)) <= 4 * se);
  CHECK(std::abs(expected_size / reps - 99 * p) <= 4 * std::sqrt(99 * p * (1 - p) / reps));
}

TEST_CASE("both halves of the nodal error split") {
  const double eps = 0.2;
  Graph g = gen::erdos_renyi(12, 0.5, 3);
  const double n = g.num_nodes();
  DenseOracle o = build_oracle(g);
  SpectralInfo sp = estimate_spectral(g, true);
  const double p = subset_probability(g.num_nodes(), sp.phi, eps / 2);

  // Subset-sampling half with exact pair values.
  for (NodeId s = 0; s < g.num_nodes(); ++s) {
    Rng rng(derive_seed(5, s));
    double x = 0.0;
    for (NodeId t : bernoulli_subset(g.num_nodes(), p, rng, s)) x += exact_pair(o, s, t);
    CHECK(std::abs(x / p - exact_nodal(o, s)) <= n * eps / 2);
  }
  // Sampler half with the full subset.
  for (NodeId s = 0; s < g.num_nodes(); s += 4) {
    NodalEstimate e = query_snb(g, sp, s, eps / 2, 0.01, with_seed(s));
    CHECK(std::abs(e.value - exact_nodal(o, s)) <= n * eps / 2);
  }
}
