#pragma once

#include <vector>

#include "sinezeros/config.hpp"
#include "sinezeros/fourier.hpp"
#include "sinezeros/root_oracle.hpp"

namespace sinezeros {

/// A_g f = f + Σ_{k=1}^{K} e(M^k f)·g^k/k! on the common window of g and f.
CoeffSeq apply_Ag(const CoeffSeq& g, const CoeffSeq& f, int K);
CoeffSeq apply_Ag(const CoeffSeq& g, const CoeffSeq& f, const MultiplierPowers& powers);

/// Solves A_g f = h by f ← h - (A_g - I) f. Needs ‖g‖ ≤ 1/2.
CoeffSeq invert_Ag(const CoeffSeq& g, const CoeffSeq& h, double tol, int K = 16);
CoeffSeq invert_Ag(const CoeffSeq& g, const CoeffSeq& h, double tol, const MultiplierPowers& powers);

/// f with F_f(πn + e_n(g)) = 0 for every n, for g with ‖g‖ ≤ 1/2 and
/// ‖g‖_{L1} < π/2. Throws NumericalError("inverse residual exceeded") when the
/// residual check over |n| ≤ n_max fails.
CoeffSeq b_map(const CoeffSeq& g, const SolverConfig& cfg);

struct InverseResult {
  CoeffSeq f;
  ZeroSet zeros;          // the prescribed zeros; certified_m = -1
  Index m = -1;           // split degree, -1 when g needed no splitting
  double eps = 0;
  std::vector<Complex> alphas;
  std::vector<double> residuals;  // |F_f(z_n)| e^{-|Im z_n|}, n = -N..N
  double max_derivative_residual = 0;
  double condition_number = 1;
};

/// f ∈ X whose F_f vanishes exactly at z_n = πn + e_n(g) (with multiplicity).
InverseResult inverse_map(const CoeffSeq& g, const SolverConfig& cfg);

}  // namespace sinezeros
