#pragma once

#include <numbers>

#include "sinezeros/coeff_seq.hpp"

namespace sinezeros {

/// Argument-principle quadrature settings.
struct ContourOptions {
  int base_points = 512;           // trapezoid nodes, doubled until the winding number settles
  int max_points = 1 << 17;
  double winding_tol = 1e-3;       // accepted distance of the winding number from an integer
  double dist_min = 1e-8;          // a zero closer than this to the contour forces a nudge
  double nudge = std::numbers::pi / 50;
  int max_nudges = 5;
};

struct SolverConfig {
  Index N = 256;                   // coefficient half-width
  int K = 16;                      // Γ truncation order
  Index k0 = 8;                    // starting reduction depth
  Index d = 8;                     // starting reduction degree
  double gamma_target = 0.2;       // required ‖γ̃‖_Γ after reduction (r0 = 1/4)
  double fp_tol = 1e-13;
  int max_iter = 200;
  double eps_perturb = 0.05;       // cap on ε for the inverse patching perturbations
  Index n1_margin = 4;
  Index n_max = 64;                // oracle enumeration range
  double patch_tol = 1e-8;
  double newton_tol = 1e-12;
  double cluster_radius = 1e-6;
  double multiplicity_probe_radius = 1e-4;
  double residual_tol = 1e-8;      // |F_f(z_n)| e^{-|Im z_n|} for constructed f
  double derivative_residual_tol = 1e-7;
  double cond_max = 1e10;
  double split_margin = 0.1;       // relative margin on ‖g̃‖ and ‖g̃‖_{L1} bounds
  Index split_degree = -1;         // inverse split degree m; -1 selects it automatically
  ContourOptions contour{};

  /// Throws PreconditionError when the settings are inconsistent.
  void validate() const;
};

inline void SolverConfig::validate() const {
  if (N < 1) throw PreconditionError("SolverConfig: N must be >= 1");
  if (K < 1) throw PreconditionError("SolverConfig: K must be >= 1");
  if (k0 < 0 || k0 > K) throw PreconditionError("SolverConfig: need K >= k0 >= 0");
  if (d < 0) throw PreconditionError("SolverConfig: d must be >= 0");
  if (!(fp_tol > 0)) throw PreconditionError("SolverConfig: fp_tol must be positive");
  if (!(eps_perturb > 0)) throw PreconditionError("SolverConfig: eps must be positive");
  if (max_iter < 1) throw PreconditionError("SolverConfig: max_iter must be >= 1");
  if (n_max < 1) throw PreconditionError("SolverConfig: nmax must be >= 1");
  if (n1_margin < 0) throw PreconditionError("SolverConfig: n1_margin must be >= 0");
}

}  // namespace sinezeros
