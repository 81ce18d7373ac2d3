#include "sinezeros/inverse_construct.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sinezeros/sine_type.hpp"

namespace sinezeros {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNeumannTol = 1e-14;
constexpr int kNeumannMaxIter = 500;
constexpr double kClusterTol = 1e-9;
constexpr double kStructureTol = 1e-8;

double scaled_residual(const SineType& F, Complex z) { return std::abs(evaluate(F, z)) * std::exp(-std::abs(z.imag())); }

void check_window(const CoeffSeq& g, const SolverConfig& cfg, const char* who) {
  if (g.half_width() > cfg.N) throw PreconditionError(std::string(who) + ": g is wider than the window N");
}

CoeffSeq b_map_with(const CoeffSeq& g, const SolverConfig& cfg, const MultiplierPowers& powers) {
  if (g.norm() > kAgRadius * (1 + 1e-12)) throw PreconditionError("g too large for Neumann inversion");
  if (l1_norm_estimate(g).value >= kPi / 2) throw PreconditionError("b_map: L1 norm of g must be below pi/2");
  // F_f(πn + ζ) = (-1)^n (sin ζ + Σ_k e_{-n}(M^k f) ζ^k/k!), so the entrywise
  // equation at index n carries e_{-n}(g)
  const CoeffSeq gr = g.resized(powers.half_width()).reflected();
  CoeffSeq f = -invert_Ag(gr, entrywise_sin(gr), kNeumannTol, powers);

  const SineType F(f);
  const Index n_max = std::min(cfg.n_max, powers.half_width());
  for (Index n = -n_max; n <= n_max; ++n) {
    const double r = scaled_residual(F, kPi * double(n) + g[n]);
    if (!(r <= cfg.residual_tol)) {
      std::ostringstream msg;
      msg << "inverse residual exceeded: " << r << " at n = " << n << " (K = " << powers.max_power()
          << ", N = " << powers.half_width() << ")";
      throw NumericalError(msg.str());
    }
  }
  return f;
}

// minimum distance between {z_k}_{|k|≤m} and {z_n}_{|n|>m}
double split_separation(const CoeffSeq& g, Index m) {
  const Index hw = g.half_width();
  double best = std::numeric_limits<double>::infinity();
  for (Index k = -m; k <= m; ++k) {
    const Complex zk = kPi * double(k) + g[k];
    for (Index n = m + 1; n <= std::max(hw, m + 1); ++n) {
      for (const Index s : {-n, n}) best = std::min(best, std::abs(zk - (kPi * double(s) + g[s])));
    }
  }
  return best;
}

bool split_acceptable(const CoeffSeq& g, Index m, double margin) {
  const CoeffSeq rest = g - g.partial_sum(m);
  if (rest.norm() > (1 - margin) * kAgRadius) return false;
  if (l1_norm_estimate(rest).value > (1 - margin) * kPi / 2) return false;
  return m < 0 || split_separation(g, m) >= kKRadius;
}

}  // namespace

CoeffSeq apply_Ag(const CoeffSeq& g, const CoeffSeq& f, const MultiplierPowers& powers) {
  const Index hw = powers.half_width();
  if (g.half_width() > hw || f.half_width() > hw) throw PreconditionError("apply_Ag: input wider than window");
  const std::vector<CoeffSeq> terms = powers.apply_all(f);
  const CoeffSeq gw = g.resized(hw);
  CoeffSeq out = f.resized(hw);
  CoeffSeq::Vector weight = CoeffSeq::Vector::Ones(2 * hw + 1);  // g^k/k!
  for (int k = 1; k <= powers.max_power(); ++k) {
    weight = weight.cwiseProduct(gw.entries()) / double(k);
    out = out + CoeffSeq(hw, terms[static_cast<std::size_t>(k)].entries().cwiseProduct(weight));
  }
  return out;
}

CoeffSeq apply_Ag(const CoeffSeq& g, const CoeffSeq& f, int K) {
  return apply_Ag(g, f, MultiplierPowers(std::max(g.half_width(), f.half_width()), K));
}

CoeffSeq invert_Ag(const CoeffSeq& g, const CoeffSeq& h, double tol, const MultiplierPowers& powers) {
  if (g.norm() > kAgRadius * (1 + 1e-12)) throw PreconditionError("g too large for Neumann inversion");
  const CoeffSeq hw = h.resized(powers.half_width());
  CoeffSeq f = hw;
  for (int it = 0; it < kNeumannMaxIter; ++it) {
    CoeffSeq next = hw - (apply_Ag(g, f, powers) - f);
    const double step = (next - f).norm();
    f = std::move(next);
    if (step <= tol) {
      const double residual = (apply_Ag(g, f, powers) - hw).norm();
      if (residual > 2 * tol) {
        std::ostringstream msg;
        msg << "invert_Ag: residual " << residual << " above " << 2 * tol;
        throw NumericalError(msg.str());
      }
      return f;
    }
  }
  throw NumericalError("invert_Ag: Neumann iteration did not converge");
}

CoeffSeq invert_Ag(const CoeffSeq& g, const CoeffSeq& h, double tol, int K) {
  return invert_Ag(g, h, tol, MultiplierPowers(std::max(g.half_width(), h.half_width()), K));
}

CoeffSeq b_map(const CoeffSeq& g, const SolverConfig& cfg) {
  cfg.validate();
  check_window(g, cfg, "b_map");
  return b_map_with(g, cfg, MultiplierPowers(cfg.N, cfg.K));
}

InverseResult inverse_map(const CoeffSeq& g_in, const SolverConfig& cfg) {
  cfg.validate();
  check_window(g_in, cfg, "inverse_map");
  const Index N = cfg.N;
  const CoeffSeq g = g_in.resized(N);
  const MultiplierPowers powers(N, cfg.K);

  // (1) split g = p + g̃ with p the degree-m partial sum
  Index m = cfg.split_degree;
  if (m < 0) {
    for (m = -1; m <= N / 2; ++m) {
      if (split_acceptable(g, m, cfg.split_margin)) break;
    }
    if (m > N / 2) throw NumericalError("inverse_map: no split degree m <= N/2 meets the norm bounds");
  } else if (m > N) {
    throw PreconditionError("inverse_map: split degree exceeds N");
  }
  const CoeffSeq g_rest = g - g.partial_sum(m);

  InverseResult out;
  out.m = m;
  const CoeffSeq f_rest = b_map_with(g_rest, cfg, powers);
  CoeffSeq f = f_rest;

  // prescribed low-index zeros, clustered into distinct points w_j with multiplicity r_j
  std::vector<ZeroCluster> clusters;
  for (Index k = -std::max<Index>(m, 0); k <= std::max<Index>(m, 0); ++k) {
    const Complex z = kPi * double(k) + g[k];
    auto it = std::find_if(clusters.begin(), clusters.end(),
                           [&](const ZeroCluster& c) { return std::abs(c.w - z) <= kClusterTol; });
    if (it == clusters.end()) {
      clusters.push_back({z, 1});
    } else {
      ++it->multiplicity;
    }
  }

  if (m >= 0) {
    // (2)-(3) perturbations g̃_l = g̃ + ε e^{2πilt}
    const double eps = std::min(cfg.eps_perturb, (kAgRadius - g_rest.norm()) / 4);
    out.eps = eps;
    const SineType G(f_rest);
    const Index size = 2 * m + 1;
    std::vector<CoeffSeq> differences;  // f̃_l - f̃
    for (Index l = -m; l <= m; ++l) {
      const CoeffSeq f_l = b_map_with(g_rest + CoeffSeq::delta(N, l, Complex(eps)), cfg, powers);
      const SineType G_l(f_l);
      for (Index k = -m; k <= m; ++k) {
        const Complex zeta = kPi * double(k) + g_rest[k];
        const double value = scaled_residual(G_l, zeta);
        if ((k != l && value > kStructureTol) || (k == l && value <= 1e-3 * eps)) {
          std::ostringstream msg;
          msg << "inverse_map: perturbation structure violated for l = " << l << " at k = " << k;
          throw NumericalError(msg.str());
        }
      }
      differences.push_back(f_l - f_rest);
    }

    // (4) Σ_l α_l (G_l - G)^{(j)}(w) = -G^{(j)}(w), j < r, rows scaled by e^{-|Im w|}
    Eigen::MatrixXcd A(size, size);
    Eigen::VectorXcd rhs(size);
    Index row = 0;
    for (const auto& c : clusters) {
      const double scale = std::exp(-std::abs(c.w.imag()));
      for (int j = 0; j < c.multiplicity; ++j, ++row) {
        if (j > kMaxDerivativeOrder) throw PreconditionError("inverse_map: multiplicity above 9 is not supported");
        for (Index col = 0; col < size; ++col) {
          A(row, col) = scale * evaluate_integral_part(differences[static_cast<std::size_t>(col)], c.w, j);
        }
        rhs(row) = -scale * evaluate_derivative(G, c.w, j);
      }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    out.condition_number = sv(size - 1) > 0 ? sv(0) / sv(size - 1) : std::numeric_limits<double>::infinity();
    if (!(out.condition_number <= cfg.cond_max)) {
      throw NumericalError("patch system ill-conditioned; decrease eps or increase m");
    }
    const Eigen::VectorXcd alpha = A.partialPivLu().solve(rhs);

    // (5) f = f̃ + Σ α_l (f̃_l - f̃)
    for (Index col = 0; col < size; ++col) {
      out.alphas.push_back(alpha(col));
      f += differences[static_cast<std::size_t>(col)] * alpha(col);
    }
  }

  // (6) every prescribed zero, with derivative conditions on clusters
  const SineType F(f);
  std::vector<Complex> zeros;
  double worst = 0;
  Index worst_n = 0;
  for (Index n = -N; n <= N; ++n) {
    const Complex z = kPi * double(n) + g[n];
    const double r = scaled_residual(F, z);
    out.residuals.push_back(r);
    if (!(r <= worst)) {
      worst = r;
      worst_n = n;
    }
  }
  for (const auto& c : clusters) {
    const double scale = std::exp(-std::abs(c.w.imag()));
    for (int j = 1; j < c.multiplicity; ++j) {
      out.max_derivative_residual =
          std::max(out.max_derivative_residual, scale * std::abs(evaluate_derivative(F, c.w, j)));
    }
  }
  if (!(worst <= cfg.residual_tol) || !(out.max_derivative_residual <= cfg.derivative_residual_tol)) {
    std::ostringstream msg;
    msg << "inverse residual exceeded: max " << worst << " at n = " << worst_n << ", derivative residual "
        << out.max_derivative_residual;
    throw NumericalError(msg.str());
  }

  const Index n_max = std::min(cfg.n_max, N);
  for (Index n = -n_max; n <= n_max; ++n) zeros.push_back(kPi * double(n) + g[n]);
  std::sort(clusters.begin(), clusters.end(), [](const ZeroCluster& a, const ZeroCluster& b) {
    return a.w.real() != b.w.real() ? a.w.real() < b.w.real() : a.w.imag() < b.w.imag();
  });
  out.zeros = ZeroSet(n_max, std::max<Index>(m, 0), std::move(zeros), std::move(clusters), -1);
  out.f = std::move(f);
  return out;
}

}  // namespace sinezeros
