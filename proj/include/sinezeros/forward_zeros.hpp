#pragma once

#include <optional>
#include <vector>

#include "sinezeros/config.hpp"
#include "sinezeros/fourier.hpp"
#include "sinezeros/root_oracle.hpp"

namespace sinezeros {

/// (G_γ(x))_n = x_n - sin x_n - Σ_{k=0}^{K} (a_k)_n x_n^k/k!, entrywise.
/// Its fixed points solve sin x_n + Σ_k (a_k)_n x_n^k/k! = 0.
CoeffSeq apply_G(const GammaElement& gamma, const CoeffSeq& x);

struct FixedPointResult {
  CoeffSeq x;
  int iterations = 0;
  std::vector<double> ratios;  // ‖x_{j+1}-x_j‖ / ‖x_j-x_{j-1}‖ above the rounding floor
  double last_step = 0;
  double residual = 0;         // ‖x - G_γ(x)‖
};

/// Picard iteration from x = 0. Throws PreconditionError("gamma norm exceeds r0")
/// when ‖γ‖_Γ > 1/4 and NumericalError("contraction violated") on a ratio above 0.55.
FixedPointResult solve_fixed_point(const GammaElement& gamma, const SolverConfig& cfg);

struct ForwardOptions {
  std::optional<Index> k0;  // fixed reduction depth (skips escalation when both are set)
  std::optional<Index> d;
  const ZeroSet* reference = nullptr;
};

struct ForwardResult {
  CoeffSeq g;
  ZeroSet zeros;
  Index n1 = 0;
  bool certified = true;
  std::vector<double> contraction_ratios;
  int iterations = 0;
  CoeffSeq x_tilde;  // fixed point of the reduced γ, indexed like γ
  GammaElement gamma_reduced;
  Index k0 = 0;
  Index d = 0;
  double gamma_norm = 0;  // ‖γ̃‖_Γ
};

/// g with e_n(g) = z_n - πn for the zeros z_n of F_f.
ForwardResult forward_map(const CoeffSeq& f, const SolverConfig& cfg, const ForwardOptions& opts = {});

struct BranchResult {
  std::vector<double> s;
  std::vector<CoeffSeq> path;
  std::vector<double> lipschitz_ratios;  // ‖Δx̃‖ / ‖Δγ̃‖_Γ per consecutive pair
  Index k0 = 0;
  Index d = 0;
};

/// forward_map along f_s = f0 + s(f1 - f0), s = j/steps, following one branch.
/// Throws NumericalError("branch point ...") on a multiple zero.
BranchResult track_branch(const CoeffSeq& f0, const CoeffSeq& f1, int steps, const SolverConfig& cfg);

}  // namespace sinezeros
