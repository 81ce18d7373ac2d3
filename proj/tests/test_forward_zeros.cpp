#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sinezeros/forward_zeros.hpp"

using namespace sinezeros;
using oracle::kPi;

namespace {

GammaElement random_gamma(std::mt19937_64& rng, Index hw, int K, double target_norm) {
  std::vector<CoeffSeq> terms;
  for (int k = 0; k <= K; ++k) terms.push_back(oracle::random_seq(rng, hw, 1.0, hw));
  const GammaElement raw(terms);
  const double scale = target_norm / raw.norm();
  for (auto& t : terms) t *= Complex(scale);
  return GammaElement(terms);
}

SolverConfig config(Index N = 128, Index n_max = 32) {
  SolverConfig cfg;
  cfg.N = N;
  cfg.n_max = n_max;
  return cfg;
}

}  // namespace

TEST_CASE("apply_G: trivial cases and the series for x - sin x") {
  const GammaElement zero(std::vector<CoeffSeq>(4, CoeffSeq(6)));
  CHECK(apply_G(zero, CoeffSeq(6)).norm() == 0);

  std::mt19937_64 rng(1);
  const CoeffSeq x = oracle::random_seq(rng, 6, 0.5, 6) * Complex(1.0);
  const CoeffSeq gx = apply_G(zero, x);
  for (Index n = -6; n <= 6; ++n) {
    // x - sin x = -Σ_{k≥1} (-1)^k x^{2k+1}/(2k+1)!
    Complex series(0), term = x[n] * x[n] * x[n] / 6.0;
    for (int k = 1; k < 20; ++k) {
      series += term;
      term *= -x[n] * x[n] / double((2 * k + 2) * (2 * k + 3));
    }
    CHECK(std::abs(gx[n] - series) <= 1e-15);
  }

  const GammaElement g = random_gamma(rng, 6, 5, 0.2);
  CHECK((apply_G(g, CoeffSeq(6)) + g[0]).norm() == 0);
}

TEST_CASE("solve_fixed_point: examples and iteration bound") {
  const SolverConfig cfg = config();
  const GammaElement zero(std::vector<CoeffSeq>(3, CoeffSeq(8)));
  CHECK(solve_fixed_point(zero, cfg).x.norm() == 0);

  std::vector<CoeffSeq> terms(3, CoeffSeq(8));
  terms[0] = CoeffSeq::delta(8, 5, 0.1);
  const FixedPointResult r = solve_fixed_point(GammaElement(terms), cfg);
  CHECK(std::abs(r.x[5] + std::asin(0.1)) <= 1e-15);
  CHECK(r.x.norm() == doctest::Approx(std::asin(0.1)).epsilon(1e-14));
  const int bound = int(std::ceil(std::log2(0.1 / cfg.fp_tol))) + 2;
  CHECK(r.iterations <= bound);

  std::vector<CoeffSeq> big(2, CoeffSeq(4));
  big[0] = CoeffSeq::delta(4, 0, 0.3);
  CHECK_THROWS_WITH_AS(solve_fixed_point(GammaElement(big), cfg), "gamma norm exceeds r0", PreconditionError);
}

TEST_CASE("solve_fixed_point: contraction and residual on random gamma") {
  const SolverConfig cfg = config();
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    const GammaElement g = random_gamma(rng, 16, 8, 0.25 * (trial + 1) / 30.0);
    const FixedPointResult r = solve_fixed_point(g, cfg);
    for (const double ratio : r.ratios) CHECK(ratio <= 0.55);
    CHECK(r.residual <= 2 * cfg.fp_tol);
    CHECK(r.x.norm() <= 0.5);
    // each entry solves the scalar equation
    for (Index n = -16; n <= 16; n += 5) {
      std::vector<Complex> a;
      for (int k = 0; k <= 8; ++k) a.push_back(g[k][n]);
      CHECK(std::abs(oracle::solve_entry(a) - r.x[n]) <= 1e-12);
    }
  }
}

TEST_CASE("Lipschitz dependence on gamma") {
  const SolverConfig cfg = config();
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const GammaElement a = random_gamma(rng, 12, 6, 0.2);
    std::vector<CoeffSeq> terms = a.terms();
    for (auto& t : terms) t += oracle::random_seq(rng, 12, 0.01, 12);
    const GammaElement b(terms);
    if (b.norm() > 0.25) continue;
    const double dx = (solve_fixed_point(a, cfg).x - solve_fixed_point(b, cfg).x).norm();
    CHECK(dx <= 2 * (a - b).norm() + 1e-10);
  }
}

TEST_CASE("forward_map: f = 0, constant and single harmonic") {
  const SolverConfig cfg = config();
  const ForwardResult zero = forward_map(CoeffSeq(cfg.N), cfg);
  CHECK(zero.g.norm() <= 1e-13);
  CHECK(zero.certified);

  const ForwardResult c = forward_map(CoeffSeq::delta(cfg.N, 0, 0.05), cfg);
  CHECK(std::abs(c.g[0] + 0.05) <= 1e-12);
  CHECK(std::abs(c.zeros.zero(0) + 0.05) <= 1e-12);
  for (Index n = 1; n <= cfg.N; ++n) CHECK(std::abs(c.g[n]) + std::abs(c.g[-n]) <= 1e-12);

  const ForwardResult h = forward_map(CoeffSeq::delta(cfg.N, 2, 0.03), cfg);
  CHECK(std::abs(h.g[-2] + 0.03) <= 1e-12);
  CHECK((h.g - CoeffSeq::delta(cfg.N, -2, h.g[-2])).sup_norm() <= 1e-12);
  CHECK_THROWS_AS(forward_map(CoeffSeq(cfg.N + 1), cfg), PreconditionError);
}

TEST_CASE("forward_map: zeros equation, oracle agreement and tail") {
  const SolverConfig cfg = config(256, 64);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 3; ++trial) {
    const CoeffSeq f = oracle::random_seq(rng, 16, 0.05, cfg.N);
    const ForwardResult r = forward_map(f, cfg);
    CHECK(r.certified);
    CHECK(r.n1 >= r.d);
    CHECK(r.gamma_norm < cfg.gamma_target);
    const GammaElement gamma = gamma_from_f(f, cfg.K);
    const SineType F(f);
    for (Index n = -64; n <= 64; ++n) {
      const Complex zeta = r.g[n];
      Complex lhs = std::sin(zeta), pw(1);
      double fact = 1;
      for (int k = 0; k <= cfg.K; ++k) {
        if (k > 0) fact *= k;
        lhs += gamma[k][-n] * pw / fact;
        pw *= zeta;
      }
      CHECK(std::abs(lhs) <= 1e-9);
      CHECK(std::abs(r.zeros.zero(n) - (kPi * double(n) + zeta)) <= 1e-9);
      CHECK(std::abs(oracle::F_quadrature(f, kPi * double(n) + zeta, 128)) <= 1e-9);
    }
    double total = 0, tail = 0;
    for (Index n = -cfg.N; n <= cfg.N; ++n) {
      total += std::norm(r.g[n]);
      if (std::abs(n) > 32) tail += std::norm(r.g[n]);
    }
    CHECK(tail <= 0.1 * total);
  }
}

TEST_CASE("forward_map: first-order law g ~ -f(1 - t)") {
  const SolverConfig cfg = config();
  std::mt19937_64 rng(5);
  const CoeffSeq shape = oracle::random_seq(rng, 8, 1.0, cfg.N);
  std::vector<double> defects;
  for (const double s : {0.04, 0.02, 0.01, 0.005}) {
    const CoeffSeq f = shape * Complex(s);
    const ForwardResult r = forward_map(f, cfg);
    defects.push_back((r.g + f.reflected()).norm() / (s * s));
  }
  for (std::size_t i = 1; i < defects.size(); ++i) {
    CHECK(defects[i] / defects[i - 1] >= 0.5);
    CHECK(defects[i] / defects[i - 1] <= 2.0);
  }
}

TEST_CASE("forward_map: patch window exhausted on a tiny window") {
  SolverConfig cfg = config(16, 8);
  CHECK_THROWS_WITH_AS(forward_map(CoeffSeq::delta(16, 1, 0.05), cfg), "patch window exhausted", NumericalError);
}

TEST_CASE("forward_map: large f leaves the low zeros to the subdivision search") {
  const SolverConfig cfg = config(128, 32);
  std::mt19937_64 rng(6);
  const CoeffSeq f = oracle::random_seq(rng, 2, 1.5, cfg.N);
  const ForwardResult r = forward_map(f, cfg);
  CHECK(r.certified);
  const SineType F(f);
  for (Index n = -32; n <= 32; ++n) {
    const Complex z = kPi * double(n) + r.g[n];
    CHECK(std::abs(evaluate(F, z)) <= 1e-9 * std::exp(std::abs(z.imag())));
  }
}

TEST_CASE("track_branch: constant path, linear zero motion, Lipschitz surrogate") {
  const SolverConfig cfg = config(64, 16);
  const CoeffSeq f0 = CoeffSeq::delta(64, 0, 0.02);
  const BranchResult still = track_branch(f0, f0, 3, cfg);
  for (const auto& g : still.path) CHECK((g - still.path.front()).norm() <= 1e-15);

  const BranchResult lin = track_branch(CoeffSeq(64), CoeffSeq::delta(64, 0, 0.05), 8, cfg);
  REQUIRE(lin.path.size() == 9);
  for (std::size_t j = 0; j <= 8; ++j) CHECK(std::abs(lin.path[j][0] + 0.05 * lin.s[j]) <= 1e-12);

  std::mt19937_64 rng(7);
  const BranchResult rnd = track_branch(CoeffSeq(64), oracle::random_seq(rng, 8, 0.05, 64), 6, cfg);
  for (const double ratio : rnd.lipschitz_ratios) CHECK(ratio <= 2.0);
  CHECK_THROWS_AS(track_branch(f0, f0, 0, cfg), PreconditionError);
}

TEST_CASE("track_branch: a double zero on the path is a branch point") {
  // 1 + a/z + b/(z+π) acquires a double root at s = 1
  const double a = 0.1;
  const double b = 2 * std::sqrt(a * kPi) - kPi - a;
  CoeffSeq f1(256);
  f1.coeffRef(0) = a;
  f1.coeffRef(1) = b;
  CoeffSeq f0 = f1;
  f0.coeffRef(1) = b * 0.9;
  const SolverConfig cfg = config(256, 16);
  CHECK_THROWS_WITH_AS(track_branch(f0, f1, 2, cfg), doctest::Contains("branch point"), NumericalError);
}
