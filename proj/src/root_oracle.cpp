#include "sinezeros/root_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <utility>

namespace sinezeros {

namespace {

constexpr double kPi = std::numbers::pi;

double scaled_abs(Complex value, Complex z) { return std::abs(value) * std::exp(-std::abs(z.imag())); }

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

enum class WindingStatus { kOk, kTooClose, kNoConvergence };

struct Winding {
  WindingStatus status = WindingStatus::kNoConvergence;
  int count = 0;
  int points = 0;
};

// (1/2πi)∮ F'/F dz by the trapezoid rule, doubling the node count until the
// value settles near an integer.
Winding winding_number(const SineType& F, Complex center, double radius, const ContourOptions& opts) {
  int points = std::max(4, opts.base_points / 2);
  Complex sum(0);
  double min_distance = std::numeric_limits<double>::infinity();
  auto accumulate = [&](int j, int total) {
    const Complex e = std::polar(1.0, 2 * kPi * double(j) / double(total));
    const auto [f, df] = evaluate_with_derivative(F, center + radius * e);
    if (f == Complex(0) || !finite(f) || !finite(df)) return false;
    if (df != Complex(0)) min_distance = std::min(min_distance, std::abs(f / df));
    sum += df / f * e;
    return true;
  };

  for (int j = 0; j < points; ++j) {
    if (!accumulate(j, points)) return {WindingStatus::kTooClose, 0, points};
  }
  Complex previous = radius * sum / double(points);
  while (points < opts.max_points) {
    points *= 2;
    for (int j = 1; j < points; j += 2) {
      if (!accumulate(j, points)) return {WindingStatus::kTooClose, 0, points};
    }
    if (min_distance < opts.dist_min) return {WindingStatus::kTooClose, 0, points};
    const Complex current = radius * sum / double(points);
    const double nearest = std::round(current.real());
    if (std::abs(current - previous) < opts.winding_tol && std::abs(current - Complex(nearest)) < opts.winding_tol) {
      return {WindingStatus::kOk, static_cast<int>(nearest), points};
    }
    previous = current;
  }
  return {WindingStatus::kNoConvergence, 0, points};
}

Complex muller_step(const SineType& F, Complex z, double h) {
  const Complex z0 = z - h, z1 = z + h, z2 = z;
  const Complex f0 = evaluate(F, z0), f1 = evaluate(F, z1), f2 = evaluate(F, z2);
  const Complex h1 = z1 - z0, h2 = z2 - z1;
  const Complex d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
  const Complex a = (d2 - d1) / (h2 + h1);
  const Complex b = a * h2 + d2;
  const Complex disc = std::sqrt(b * b - 4.0 * a * f2);
  const Complex den = std::abs(b + disc) > std::abs(b - disc) ? b + disc : b - disc;
  if (den == Complex(0)) return Complex(h);
  return 2.0 * f2 / den;  // z_new = z - step
}

bool less_by_real_then_imag(Complex a, Complex b) {
  if (std::abs(a.real() - b.real()) > 1e-9 * std::max(1.0, std::abs(a.real()))) return a.real() < b.real();
  return a.imag() < b.imag();
}

struct SubdivisionSearch {
  const SineType& F;
  const SolverConfig& cfg;
  std::vector<ZeroCluster> found;

  void run(Complex center, double half, int depth) {
    if (depth > 64) throw EnumerationError("enumeration failure: subdivision depth exceeded");
    const double radius = half * std::numbers::sqrt2 * 1.05;
    ContourOptions opts = cfg.contour;
    opts.nudge = 0.02 * radius;  // keeps the nudged disk covering the square
    const ContourCount cc = count_zeros_disk_detailed(F, center, radius, opts);
    if (cc.count <= 0) return;
    if (cc.count == 1) {
      try {
        const NewtonResult nr = newton_refine(F, center, cfg.newton_tol);
        if (std::abs(nr.z - center) <= cc.radius) {
          found.push_back({nr.z, 1});
          return;
        }
      } catch (const ConvergenceError&) {
      }
    } else if (half <= cfg.multiplicity_probe_radius / 2) {
      found.push_back({refine_cluster(F, center, cc.count, cfg.newton_tol), cc.count});
      return;
    }
    const double q = half / 2;
    for (const Complex offset : {Complex(-q, -q), Complex(q, -q), Complex(-q, q), Complex(q, q)}) {
      run(center + offset, q, depth + 1);
    }
  }
};

}  // namespace

ZeroSet::ZeroSet(Index n_max, Index n0, std::vector<Complex> zeros, std::vector<ZeroCluster> clusters,
                 Index certified_m)
    : n_max_(n_max), n0_(n0), zeros_(std::move(zeros)), clusters_(std::move(clusters)), certified_m_(certified_m) {
  if (n_max_ < 0 || static_cast<Index>(zeros_.size()) != 2 * n_max_ + 1) {
    throw PreconditionError("ZeroSet: zero list must cover -n_max..n_max");
  }
}

Complex ZeroSet::zero(Index n) const {
  if (n < -n_max_ || n > n_max_) throw PreconditionError("ZeroSet: index outside -n_max..n_max");
  return zeros_[static_cast<std::size_t>(n + n_max_)];
}

Complex ZeroSet::zeta(Index n) const { return zero(n) - kPi * double(n); }

ContourCount count_zeros_disk_detailed(const SineType& F, Complex center, double radius, const ContourOptions& opts) {
  if (!(radius > 0)) throw PreconditionError("count_zeros_disk: radius must be positive");
  const double step = std::min(opts.nudge, radius / 4);
  WindingStatus last = WindingStatus::kOk;
  for (int attempt = 0; attempt <= opts.max_nudges; ++attempt) {
    // 0, +δ, -δ, +2δ, -2δ, ...
    const int k = (attempt + 1) / 2;
    const double r = radius + ((attempt % 2 == 1) ? 1.0 : -1.0) * double(k) * step;
    const Winding w = winding_number(F, center, r, opts);
    if (w.status == WindingStatus::kOk) return {w.count, r, w.points, attempt};
    last = w.status;
  }
  if (last == WindingStatus::kTooClose) throw NumericalError("ill-conditioned contour");
  throw NumericalError("quadrature failure");
}

int count_zeros_disk(const SineType& F, Complex center, double radius, const ContourOptions& opts) {
  return count_zeros_disk_detailed(F, center, radius, opts).count;
}

NewtonResult newton_refine(const SineType& F, Complex z0, double tol, int max_steps) {
  Complex z = z0;
  Complex best = z0;
  double best_residual = std::numeric_limits<double>::infinity();
  bool fallback = false;
  double last_step = 1e-3;
  for (int it = 1; it <= max_steps; ++it) {
    const auto [f, df] = evaluate_with_derivative(F, z);
    const double scale = std::exp(std::abs(z.imag()));
    const double residual = std::abs(f) / scale;
    if (residual < best_residual) {
      best_residual = residual;
      best = z;
    }
    if (residual == 0) return {z, it, fallback, 0.0};

    Complex step;
    if (!finite(df) || std::abs(df) <= 1e-12 * scale) {
      fallback = true;
      step = muller_step(F, z, std::max(last_step, 1e-6 * (1 + std::abs(z))));
    } else {
      step = f / df;
    }
    if (!finite(step)) break;
    const Complex next = z - step;
    if (std::abs(step) <= tol && residual <= tol) {
      const double r = scaled_abs(evaluate(F, next), next);
      return {next, it, fallback, r};
    }
    last_step = std::abs(step);
    z = next;
  }
  std::ostringstream msg;
  msg << "newton_refine: no convergence in " << max_steps << " steps from " << z0;
  throw ConvergenceError(msg.str(), best);
}

Complex refine_cluster(const SineType& F, Complex z0, int multiplicity, double tol, int max_steps) {
  Complex z = z0;
  Complex best = z0;
  double best_residual = std::numeric_limits<double>::infinity();
  double previous_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < max_steps; ++it) {
    const auto [f, df] = evaluate_with_derivative(F, z);
    const double residual = scaled_abs(f, z);
    if (residual < best_residual) {
      best_residual = residual;
      best = z;
    }
    if (residual == 0 || df == Complex(0) || !finite(df)) break;
    const Complex step = double(multiplicity) * f / df;
    if (std::abs(step) <= tol) break;
    // past the noise floor the steps stop shrinking
    if (it > 4 && std::abs(step) > 2 * previous_step) break;
    previous_step = std::abs(step);
    z -= step;
  }
  return best;
}

std::vector<ZeroCluster> find_zeros_in_disk(const SineType& F, Complex center, double radius, int expected,
                                            const SolverConfig& cfg) {
  SubdivisionSearch search{F, cfg, {}};
  search.run(center, radius, 0);

  std::vector<ZeroCluster> merged;
  for (const auto& cand : search.found) {
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const ZeroCluster& m) { return std::abs(m.w - cand.w) <= cfg.cluster_radius; });
    if (it == merged.end()) {
      merged.push_back(cand);
    } else {
      it->multiplicity = std::max(it->multiplicity, cand.multiplicity);
    }
  }

  // confirm multiplicities on small circles around each point
  std::vector<ZeroCluster> confirmed;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < merged.size(); ++j) {
      if (j != i) nearest = std::min(nearest, std::abs(merged[i].w - merged[j].w));
    }
    const double probe = std::min(cfg.multiplicity_probe_radius, 0.45 * nearest);
    ContourOptions opts = cfg.contour;
    opts.nudge = 0.1 * probe;
    const int count = count_zeros_disk(F, merged[i].w, probe, opts);
    if (count > 0 && std::abs(merged[i].w - center) <= radius * (1 + 1e-12)) {
      confirmed.push_back({merged[i].w, count});
    }
  }

  int total = 0;
  for (const auto& c : confirmed) total += c.multiplicity;
  if (total != expected) {
    std::ostringstream msg;
    msg << "enumeration failure: located " << total << " zeros in |z - " << center << "| <= " << radius
        << ", expected " << expected;
    throw EnumerationError(msg.str());
  }
  std::sort(confirmed.begin(), confirmed.end(),
            [](const ZeroCluster& a, const ZeroCluster& b) { return less_by_real_then_imag(a.w, b.w); });
  return confirmed;
}

ZeroSet localize_all(const SineType& F, Index n_max, const SolverConfig& cfg, const ZeroSet* reference) {
  if (n_max < 1) throw PreconditionError("localize_all: n_max must be >= 1");
  const ContourOptions& opts = cfg.contour;

  auto single_in_K = [&](Index n) {
    try {
      return count_zeros_disk(F, Complex(kPi * double(n)), kKRadius, opts) == 1;
    } catch (const NumericalError&) {
      return false;
    }
  };

  // (i) empirical n0: every K_n beyond it holds exactly one zero
  Index n0 = 0;
  for (Index n = n_max; n >= 1; --n) {
    if (!single_in_K(n) || !single_in_K(-n)) {
      n0 = n;
      break;
    }
  }
  ContourCount low_disk;
  for (;; ++n0) {
    if (n0 >= n_max) throw EnumerationError("enumeration failure: no certified R_m below n_max");
    try {
      low_disk = count_zeros_disk_detailed(F, Complex(0), disk_R_radius(n0), opts);
      if (low_disk.count == 2 * n0 + 1) break;
    } catch (const NumericalError&) {
    }
  }

  std::vector<Complex> zeros(static_cast<std::size_t>(2 * n_max + 1));
  auto slot = [&](Index n) -> Complex& { return zeros[static_cast<std::size_t>(n + n_max)]; };

  // (ii) one zero per K_n beyond n0
  for (Index a = n0 + 1; a <= n_max; ++a) {
    for (const Index n : {-a, a}) {
      const Complex center(kPi * double(n));
      bool done = false;
      try {
        const NewtonResult nr = newton_refine(F, center, cfg.newton_tol);
        if (std::abs(nr.z - center) <= kKRadius) {
          slot(n) = nr.z;
          done = true;
        }
      } catch (const ConvergenceError&) {
      }
      if (!done) slot(n) = find_zeros_in_disk(F, center, kKRadius, 1, cfg).front().w;
    }
  }

  // (iii) everything inside R_{n0}
  std::vector<ZeroCluster> clusters = find_zeros_in_disk(F, Complex(0), low_disk.radius, int(2 * n0 + 1), cfg);

  // (iv) low indices: sorted order, or proximity to a reference enumeration
  std::vector<Complex> low;
  for (const auto& c : clusters) low.insert(low.end(), static_cast<std::size_t>(c.multiplicity), c.w);
  if (reference != nullptr && reference->n_max() >= n0) {
    struct Pair {
      double dist;
      std::size_t i;
      Index n;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < low.size(); ++i) {
      for (Index n = -n0; n <= n0; ++n) pairs.push_back({std::abs(low[i] - reference->zero(n)), i, n});
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) { return a.dist < b.dist; });
    std::vector<bool> used_i(low.size(), false), used_n(static_cast<std::size_t>(2 * n0 + 1), false);
    for (const auto& p : pairs) {
      const auto ni = static_cast<std::size_t>(p.n + n0);
      if (used_i[p.i] || used_n[ni]) continue;
      used_i[p.i] = used_n[ni] = true;
      slot(p.n) = low[p.i];
    }
  } else {
    for (Index n = -n0; n <= n0; ++n) slot(n) = low[static_cast<std::size_t>(n + n0)];
  }

  // (v) the full disk R_{n_max}
  const int total = count_zeros_disk(F, Complex(0), disk_R_radius(n_max), opts);
  if (total != 2 * n_max + 1) {
    std::ostringstream msg;
    msg << "enumeration failure: R_" << n_max << " holds " << total << " zeros, expected " << 2 * n_max + 1;
    throw EnumerationError(msg.str());
  }
  return ZeroSet(n_max, n0, std::move(zeros), std::move(clusters), n_max);
}

double sine_contour_margin(Index m, Index samples) {
  const double radius = disk_R_radius(m);
  double lowest = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < samples; ++j) {
    const double theta = 2 * kPi * double(j) / double(samples);
    const double x = radius * std::cos(theta);
    const double y = std::abs(radius * std::sin(theta));
    // e^{-y}|sin(x+iy)| = |e^{-2y} - e^{-2ix}| / 2
    const double value = std::abs(Complex(std::exp(-2 * y)) - std::polar(1.0, -2 * x)) / 2;
    lowest = std::min(lowest, value);
  }
  return lowest;
}

}  // namespace sinezeros
