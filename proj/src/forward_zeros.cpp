#include "sinezeros/forward_zeros.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sinezeros/sine_type.hpp"

namespace sinezeros {

namespace {

constexpr double kPi = std::numbers::pi;
// below this step size successive-step ratios are rounding noise
constexpr double kRatioFloor = 1e-12;
constexpr double kMaxRatio = 0.55;

struct Reduction {
  Index k0;
  Index d;
  GammaElement gamma;
  double norm;
};

Reduction choose_reduction(const GammaElement& gamma, const SolverConfig& cfg, std::optional<Index> k0_fixed,
                           std::optional<Index> d_fixed) {
  Index k0 = std::min<Index>(k0_fixed.value_or(cfg.k0), gamma.order());
  Index d = d_fixed.value_or(cfg.d);
  const bool fixed = k0_fixed.has_value() && d_fixed.has_value();
  const Index cap = gamma.half_width() / 2;
  for (;;) {
    GammaElement reduced = reduce_gamma(gamma, k0, d).gamma;
    const double norm = reduced.norm();
    if (fixed || norm < cfg.gamma_target) return {k0, d, std::move(reduced), norm};
    const Index next_d = std::max<Index>(1, 2 * d);
    if (next_d > cap) {
      std::ostringstream msg;
      msg << "reduction failed: reduced gamma norm " << norm << " above " << cfg.gamma_target << " at d = " << d;
      throw NumericalError(msg.str());
    }
    d = next_d;
    k0 = std::min<Index>(k0 + 1, gamma.order());
  }
}

GammaElement gamma_on_window(const CoeffSeq& f, const SolverConfig& cfg) {
  if (f.half_width() > cfg.N) throw PreconditionError("forward_map: f is wider than the window N");
  return GammaElement(MultiplierPowers(cfg.N, cfg.K).apply_all(f.resized(cfg.N)));
}

}  // namespace

CoeffSeq apply_G(const GammaElement& gamma, const CoeffSeq& x) {
  const Index hw = std::max(gamma.half_width(), x.half_width());
  const Index K = gamma.order();
  CoeffSeq out(hw);
  for (Index n = -hw; n <= hw; ++n) {
    const Complex xn = x[n];
    // Horner for Σ_k a_k x^k/k!
    Complex acc = gamma[K][n];
    for (Index k = K - 1; k >= 0; --k) acc = gamma[k][n] + acc * xn / double(k + 1);
    out.coeffRef(n) = xn - std::sin(xn) - acc;
  }
  return out;
}

FixedPointResult solve_fixed_point(const GammaElement& gamma, const SolverConfig& cfg) {
  if (gamma.norm() > kR0 * (1 + 1e-12)) throw PreconditionError("gamma norm exceeds r0");
  FixedPointResult result{CoeffSeq(gamma.half_width()), 0, {}, 0, 0};
  double previous = -1;
  for (int it = 1; it <= cfg.max_iter; ++it) {
    CoeffSeq next = apply_G(gamma, result.x);
    const double step = (next - result.x).norm();
    if (previous > kRatioFloor) {
      const double ratio = step / previous;
      result.ratios.push_back(ratio);
      if (ratio > kMaxRatio) {
        std::ostringstream msg;
        msg << "contraction violated: ratio " << ratio << " at iteration " << it;
        throw NumericalError(msg.str());
      }
    }
    result.x = std::move(next);
    result.iterations = it;
    result.last_step = step;
    previous = step;
    if (step <= cfg.fp_tol) {
      result.residual = (result.x - apply_G(gamma, result.x)).norm();
      return result;
    }
  }
  throw NumericalError("fixed point: no convergence within max_iter");
}

ForwardResult forward_map(const CoeffSeq& f, const SolverConfig& cfg, const ForwardOptions& opts) {
  cfg.validate();
  if (cfg.n_max > cfg.N) throw PreconditionError("forward_map: nmax must not exceed N");
  const GammaElement gamma = gamma_on_window(f, cfg);
  Reduction red = choose_reduction(gamma, cfg, opts.k0, opts.d);
  FixedPointResult fp = solve_fixed_point(red.gamma, cfg);

  // the zero near πn solves the entrywise equation at index -n
  const CoeffSeq tail = fp.x.reflected();
  const SineType F(f.resized(cfg.N));

  ForwardResult out;
  out.contraction_ratios = fp.ratios;
  out.iterations = fp.iterations;
  out.k0 = red.k0;
  out.d = red.d;
  out.gamma_norm = red.norm;
  out.x_tilde = std::move(fp.x);
  out.gamma_reduced = std::move(red.gamma);
  out.g = tail;

  Index n_max = cfg.n_max;
  std::optional<ZeroSet> zs;
  try {
    zs = localize_all(F, n_max, cfg, opts.reference);
  } catch (const NumericalError&) {
  }

  if (zs) {
    Index large_model = 0;  // last index where the tail model leaves the disk K_n
    for (Index n = -cfg.N; n <= cfg.N; ++n) {
      if (std::abs(tail[n]) >= kKRadius / 2) large_model = std::max(large_model, std::abs(n));
    }
    for (;;) {
      Index mismatch = 0;
      for (Index n = -n_max; n <= n_max; ++n) {
        if (std::abs(tail[n] - zs->zeta(n)) > cfg.patch_tol) mismatch = std::max(mismatch, std::abs(n));
      }
      const Index n1 = std::max({red.d, zs->n0(), large_model, mismatch}) + cfg.n1_margin;
      if (n1 > cfg.N / 2) throw NumericalError("patch window exhausted");
      out.n1 = n1;
      if (n1 <= n_max) break;
      n_max = n1;
      zs = localize_all(F, n_max, cfg, opts.reference);
    }
    for (Index n = -out.n1; n <= out.n1; ++n) out.g.coeffRef(n) = zs->zeta(n);
    out.zeros = std::move(*zs);
    return out;
  }

  // uncertified: polish the tail model with Newton, no counting guarantees
  out.certified = false;
  std::vector<Complex> zeros;
  for (Index n = -n_max; n <= n_max; ++n) {
    Complex z = kPi * double(n) + tail[n];
    try {
      z = newton_refine(F, z, cfg.newton_tol).z;
    } catch (const ConvergenceError&) {
    }
    zeros.push_back(z);
    out.g.coeffRef(n) = z - kPi * double(n);
  }
  out.n1 = n_max;
  out.zeros = ZeroSet(n_max, n_max, std::move(zeros), {}, -1);
  return out;
}

BranchResult track_branch(const CoeffSeq& f0, const CoeffSeq& f1, int steps, const SolverConfig& cfg) {
  if (steps < 1) throw PreconditionError("track_branch: steps must be >= 1");
  cfg.validate();
  // one reduction for the whole segment: the reduced norm is convex in s
  const Reduction r0 = choose_reduction(gamma_on_window(f0, cfg), cfg, std::nullopt, std::nullopt);
  const Reduction r1 = choose_reduction(gamma_on_window(f1, cfg), cfg, std::nullopt, std::nullopt);
  BranchResult out;
  out.k0 = std::max(r0.k0, r1.k0);
  out.d = std::max(r0.d, r1.d);

  const CoeffSeq delta = f1 - f0;
  std::optional<ForwardResult> previous;
  for (int j = 0; j <= steps; ++j) {
    const double s = double(j) / double(steps);
    ForwardOptions opts{out.k0, out.d, previous ? &previous->zeros : nullptr};
    ForwardResult res = forward_map(f0 + delta * Complex(s), cfg, opts);
    for (const auto& c : res.zeros.clusters()) {
      if (c.multiplicity > 1) {
        std::ostringstream msg;
        msg << "branch point at s = " << s << " (zero of multiplicity " << c.multiplicity << " at " << c.w << ")";
        throw NumericalError(msg.str());
      }
    }
    if (previous) {
      const double dx = (res.x_tilde - previous->x_tilde).norm();
      const double dgamma = (res.gamma_reduced - previous->gamma_reduced).norm();
      out.lipschitz_ratios.push_back(dgamma > 0 ? dx / dgamma : 0.0);
      if (dx > 2 * dgamma + 1e-10) {
        std::ostringstream msg;
        msg << "Lipschitz bound violated at s = " << s << ": " << dx << " > 2 * " << dgamma;
        throw NumericalError(msg.str());
      }
    }
    out.s.push_back(s);
    out.path.push_back(res.g);
    previous = std::move(res);
  }
  return out;
}

}  // namespace sinezeros
