#include <doctest.h>

#include <cmath>

#include "bhd/error.hpp"
#include "bhd/generators.hpp"
#include "bhd/spectral.hpp"
#include "support/reference.hpp"

using namespace bhd;

namespace {

// Estimate without the safety inflation, for comparison with dense values.
PowerOptions raw() {
  PowerOptions o;
  o.slack = 0.0;
  return o;
}

}  // namespace

TEST_CASE("estimate_lambda on closed-form graphs") {
  CHECK(estimate_lambda(gen::complete(3), raw()) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(estimate_lambda(gen::cycle(5), raw()) == doctest::Approx(0.809017).epsilon(1e-6));
  for (NodeId n : {4u, 6u, 10u, 25u})
    CHECK(estimate_lambda(gen::complete(n), raw()) == doctest::Approx(1.0 / (n - 1)).epsilon(1e-6));
}

TEST_CASE("estimate_lambda inflates by the slack and stays below one") {
  const double l = estimate_lambda(gen::complete(3));
  CHECK(l == doctest::Approx(0.505).epsilon(1e-6));
  PowerOptions big;
  big.slack = 10.0;
  const double capped = estimate_lambda(gen::cycle(5), big);
  CHECK(capped < 1.0);
  CHECK(capped == doctest::Approx(1.0 - 1e-9));
}

TEST_CASE("estimate_lambda matches the dense spectrum on random graphs") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Graph g = gen::erdos_renyi(40, 0.12, seed);
    const double dense = testing::dense_lambda(g);
    const double est = estimate_lambda(g, raw());
    CHECK(std::abs(est - dense) / dense <= 1e-6);
  }
}

TEST_CASE("estimate_lambda when lambda_2 and -lambda_n nearly coincide") {
  // Here |lambda_n| exceeds lambda_2 by about 1e-4.
  Graph g = gen::erdos_renyi(100, 0.1, 1);
  Eigen::VectorXd ev = testing::q_spectrum(g);
  REQUIRE(std::abs(std::abs(ev(0)) - ev(ev.size() - 2)) < 1e-3);
  const double dense = testing::dense_lambda(g);
  CHECK(std::abs(estimate_lambda(g, raw()) - dense) / dense <= 1e-6);
}

TEST_CASE("estimate_lambda rejects unusable graphs") {
  CHECK_THROWS_AS(estimate_lambda(gen::path(4)), DataError);
  CHECK_THROWS_AS(estimate_lambda(gen::cycle(6)), DataError);
}

TEST_CASE("estimate_lambda reports non-convergence") {
  PowerOptions o = raw();
  o.max_iter = 2;
  o.tol = 1e-15;
  Graph g = gen::erdos_renyi(60, 0.1, 3);
  try {
    estimate_lambda(g, o);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.last_iterate().size() == g.num_nodes());
    CHECK(e.residual() > 0.0);
  }
}

TEST_CASE("estimate_gamma2 on closed-form graphs") {
  CHECK(estimate_gamma2(gen::complete(3)) == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(estimate_gamma2(gen::path(3)) == doctest::Approx(1.0).epsilon(1e-6));
  for (NodeId n : {4u, 7u, 12u})
    CHECK(estimate_gamma2(gen::complete(n)) == doctest::Approx(double(n)).epsilon(1e-6));
}

TEST_CASE("estimate_gamma2 matches the dense spectrum and never exceeds n") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    Graph g = gen::erdos_renyi(35, 0.15, seed);
    const double dense = testing::laplacian_spectrum(g)(1);
    const double est = estimate_gamma2(g);
    CHECK(est == doctest::Approx(dense).epsilon(1e-5));
    CHECK(est <= g.num_nodes() + 1e-9);
  }
}

TEST_CASE("make_spectral derives phi") {
  SpectralInfo s = make_spectral(0.5, 3.0);
  CHECK(s.lambda == 0.5);
  CHECK(s.gamma2 == 3.0);
  CHECK(s.phi == doctest::Approx(2.0 / 9.0));
}

TEST_CASE("estimate_spectral skips gamma2 unless asked") {
  Graph g = gen::complete(5);
  SpectralInfo a = estimate_spectral(g, false);
  CHECK(a.gamma2 == 0.0);
  CHECK(a.phi == 0.0);
  SpectralInfo b = estimate_spectral(g, true);
  CHECK(b.lambda == a.lambda);
  CHECK(b.gamma2 == doctest::Approx(5.0).epsilon(1e-6));
}

TEST_CASE("estimates are deterministic") {
  Graph g = gen::erdos_renyi(50, 0.1, 11);
  CHECK(estimate_lambda(g) == estimate_lambda(g));
  CHECK(estimate_gamma2(g) == estimate_gamma2(g));
}
