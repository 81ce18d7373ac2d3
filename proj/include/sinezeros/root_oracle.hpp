#pragma once

#include <vector>

#include "sinezeros/config.hpp"
#include "sinezeros/sine_type.hpp"

namespace sinezeros {

struct ZeroCluster {
  Complex w;
  int multiplicity = 1;
};

/// Zeros z_n, |n| ≤ n_max, enumerated so that z_n = πn + o(1). Indices
/// |n| ≤ n0 are assigned from the clusters inside R_{n0}; a cluster of
/// multiplicity r occupies r consecutive indices.
class ZeroSet {
 public:
  ZeroSet() = default;
  ZeroSet(Index n_max, Index n0, std::vector<Complex> zeros, std::vector<ZeroCluster> clusters, Index certified_m);

  Index n_max() const { return n_max_; }
  Index n0() const { return n0_; }
  Index certified_m() const { return certified_m_; }

  Complex zero(Index n) const;
  /// z_n - πn
  Complex zeta(Index n) const;
  const std::vector<Complex>& zeros() const { return zeros_; }
  const std::vector<ZeroCluster>& clusters() const { return clusters_; }

 private:
  Index n_max_ = 0;
  Index n0_ = 0;
  std::vector<Complex> zeros_;  // index n + n_max
  std::vector<ZeroCluster> clusters_;
  Index certified_m_ = -1;
};

struct ContourCount {
  int count = 0;
  double radius = 0;   // radius actually used (after nudging)
  int points = 0;
  int nudges = 0;
};

/// Number of zeros (with multiplicity) of F in |z - center| < radius by the
/// argument principle.
int count_zeros_disk(const SineType& F, Complex center, double radius, const ContourOptions& opts = {});
ContourCount count_zeros_disk_detailed(const SineType& F, Complex center, double radius,
                                       const ContourOptions& opts = {});

struct NewtonResult {
  Complex z;
  int iterations = 0;
  bool used_fallback = false;  // Muller steps were taken after derivative breakdown
  double residual = 0;         // |F(z)| e^{-|Im z|}
};

/// Newton iteration to |F(z)| ≤ tol e^{|Im z|} and |Δz| ≤ tol.
/// Throws ConvergenceError (with the best iterate) after `max_steps`.
NewtonResult newton_refine(const SineType& F, Complex z0, double tol, int max_steps = 60);

/// Modified Newton z ← z - r F/F' for a zero of known multiplicity r; returns
/// the iterate with the smallest scaled residual.
Complex refine_cluster(const SineType& F, Complex z0, int multiplicity, double tol, int max_steps = 60);

/// Locates, counts and enumerates the zeros z_n, |n| ≤ n_max.
/// `reference` (optional) fixes the low-index assignment by proximity to a
/// previous enumeration instead of sorting.
ZeroSet localize_all(const SineType& F, Index n_max, const SolverConfig& cfg, const ZeroSet* reference = nullptr);

/// All zeros (clusters with multiplicity) inside |z - center| ≤ radius, by
/// recursive subdivision; throws EnumerationError unless the multiplicities
/// add up to `expected`.
std::vector<ZeroCluster> find_zeros_in_disk(const SineType& F, Complex center, double radius, int expected,
                                            const SolverConfig& cfg);

/// min over |z| = πm + π/6 of e^{-|Im z|}|sin z|, sampled at `samples` points.
double sine_contour_margin(Index m, Index samples);

/// Radii of the certification disks R_m and K_n.
inline double disk_R_radius(Index m) { return std::numbers::pi * double(m) + std::numbers::pi / 6; }
inline constexpr double kKRadius = std::numbers::pi / 6;

}  // namespace sinezeros
