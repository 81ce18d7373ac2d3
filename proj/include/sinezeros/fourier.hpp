#pragma once

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "sinezeros/coeff_seq.hpp"

namespace sinezeros {

// Constants of the L2(0,1) instantiation: ‖ab‖ ≤ ρ‖a‖‖b‖ with ρ = 1, ‖M‖ = 1,
// contraction radius r0 = 1/(4ρ) and the A_g invertibility radius 1/(2ρ‖M‖).
inline constexpr double kRho = 1.0;
inline constexpr double kMNorm = 1.0;
inline constexpr double kR0 = 1.0 / (4.0 * kRho);
inline constexpr double kAgRadius = 1.0 / (2.0 * kRho * kMNorm);

namespace detail {

inline Index next_pow2(Index n) {
  Index p = 1;
  while (p < n) p <<= 1;
  return p;
}

inline Index wrap(Index n, Index s) { return ((n % s) + s) % s; }

// |G_k|, k = 2..9: Gregory endpoint-correction weights.
inline constexpr std::array<double, 8> kGregory = {
    1.0 / 12.0,          1.0 / 24.0,         19.0 / 720.0,          3.0 / 160.0,
    863.0 / 60480.0,     275.0 / 24192.0,    33953.0 / 3628800.0,   8183.0 / 1036800.0};

}  // namespace detail

/// Fourier coefficients e_n(h), |n| ≤ N, from grid samples by the DFT.
///
/// Exact for trigonometric polynomials of degree ≤ N on the periodic grid.
/// When the grid carries the endpoint h(1), the data is treated as a smooth
/// non-periodic function on [0,1] and an 8th-order Gregory correction of the
/// trapezoid rule is applied at both ends.
template <typename Real>
BasicCoeffSeq<Real> coeffs_from_samples(const BasicGridFunction<Real>& h, Index half_width) {
  using Scalar = std::complex<Real>;
  const Index s = h.sample_count();
  if (half_width < 0 || s < 4 * half_width + 4) {
    throw PreconditionError("coeffs_from_samples: need S >= 4N+4");
  }
  std::vector<Scalar> in(h.samples().data(), h.samples().data() + s);
  std::vector<Scalar> out;
  Eigen::FFT<Real> fft;
  fft.fwd(out, in);

  typename BasicCoeffSeq<Real>::Vector c(2 * half_width + 1);
  for (Index n = -half_width; n <= half_width; ++n) {
    c(n + half_width) = out[static_cast<std::size_t>(detail::wrap(n, s))] / Real(s);
  }

  if (h.endpoint()) {
    const int order = static_cast<int>(std::min<Index>(detail::kGregory.size(), s - 1));
    std::vector<Scalar> head(order + 1), tail(order + 1);
    for (Index n = -half_width; n <= half_width; ++n) {
      const Real theta = -2 * std::numbers::pi_v<Real> * Real(n) / Real(s);
      for (int j = 0; j <= order; ++j) {
        head[j] = h.samples()(j) * std::polar(Real(1), theta * Real(j));
        // tail[j] = φ(S - j); φ(S) = h(1) since e^{-2πin} = 1
        tail[j] = j == 0 ? *h.endpoint() : h.samples()(s - j) * std::polar(Real(1), theta * Real(s - j));
      }
      Scalar corr = (tail[0] - head[0]) / Real(2);
      // repeated differencing in place: head → Δ^k φ_0, tail → ∇^k φ_S
      for (int k = 1; k <= order; ++k) {
        for (int j = 0; j <= order - k; ++j) {
          head[j] = head[j + 1] - head[j];
          tail[j] = tail[j] - tail[j + 1];
        }
        const Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
        corr -= Real(detail::kGregory[k - 1]) * (tail[0] + sign * head[0]);
      }
      c(n + half_width) += corr / Real(s);
    }
  }
  return BasicCoeffSeq<Real>(half_width, std::move(c));
}

/// Samples of Σ c_n e^{2πint} at t_j = j/S.
template <typename Real>
BasicGridFunction<Real> samples_from_coeffs(const BasicCoeffSeq<Real>& a, Index sample_count) {
  using Scalar = std::complex<Real>;
  const Index n_hw = a.half_width();
  if (sample_count < 2 * n_hw + 2) throw PreconditionError("samples_from_coeffs: need S >= 2N+2");
  std::vector<Scalar> spec(static_cast<std::size_t>(sample_count), Scalar(0));
  for (Index n = -n_hw; n <= n_hw; ++n) spec[static_cast<std::size_t>(detail::wrap(n, sample_count))] += a[n];
  std::vector<Scalar> out;
  Eigen::FFT<Real> fft;
  fft.SetFlag(Eigen::FFT<Real>::Unscaled);
  fft.inv(out, spec);
  typename BasicGridFunction<Real>::Vector v(sample_count);
  for (Index j = 0; j < sample_count; ++j) v(j) = out[static_cast<std::size_t>(j)];
  return BasicGridFunction<Real>(std::move(v));
}

/// (ab)_n = a_n b_n on the union window. Realizes convolution of the
/// underlying functions.
template <typename Real>
BasicCoeffSeq<Real> entrywise_product(const BasicCoeffSeq<Real>& a, const BasicCoeffSeq<Real>& b) {
  const Index w = std::max(a.half_width(), b.half_width());
  BasicCoeffSeq<Real> out(w);
  const Index common = std::min(a.half_width(), b.half_width());
  for (Index n = -common; n <= common; ++n) out.coeffRef(n) = a[n] * b[n];
  return out;
}

template <typename Real>
BasicCoeffSeq<Real> entrywise_power(const BasicCoeffSeq<Real>& a, int k) {
  typename BasicCoeffSeq<Real>::Vector v = a.entries();
  for (Index i = 0; i < v.size(); ++i) v(i) = std::pow(a.entries()(i), k);
  return BasicCoeffSeq<Real>(a.half_width(), std::move(v));
}

template <typename Real>
BasicCoeffSeq<Real> entrywise_sin(const BasicCoeffSeq<Real>& a) {
  typename BasicCoeffSeq<Real>::Vector v = a.entries().unaryExpr([](std::complex<Real> x) { return std::sin(x); });
  return BasicCoeffSeq<Real>(a.half_width(), std::move(v));
}

/// Coefficients of i(2t-1)·h on the window {-out_half_width,...}, computed
/// exactly from the finite support of a:
/// (Ma)_n = -Σ_{m≠0} a_{n-m}/(πm).
template <typename Real>
BasicCoeffSeq<Real> apply_M(const BasicCoeffSeq<Real>& a, Index out_half_width) {
  using Scalar = std::complex<Real>;
  const Real inv_pi = Real(1) / std::numbers::pi_v<Real>;
  const Index w = a.half_width();
  BasicCoeffSeq<Real> out(out_half_width);
  for (Index n = -out_half_width; n <= out_half_width; ++n) {
    Scalar acc(0);
    for (Index j = -w; j <= w; ++j) {
      if (j != n) acc += a[j] / Real(n - j);
    }
    out.coeffRef(n) = -inv_pi * acc;
  }
  return out;
}

template <typename Real>
BasicCoeffSeq<Real> apply_M(const BasicCoeffSeq<Real>& a) {
  return apply_M(a, a.half_width());
}

/// ℓ2 mass of Ma on N < |n| ≤ N + pad, i.e. what truncation back to the
/// input window discards.
template <typename Real>
Real apply_M_discarded_mass(const BasicCoeffSeq<Real>& a, Index pad) {
  const Index w = a.half_width();
  const auto wide = apply_M(a, w + pad);
  Real sq = 0;
  for (Index n = w + 1; n <= w + pad; ++n) sq += std::norm(wide[n]) + std::norm(wide[-n]);
  return std::sqrt(sq);
}

/// Moments e_m((i(2t-1))^k) for k = 0..K.
///
/// With I_k = ∫ (2t-1)^k e^{-2πimt} dt and m ≠ 0,
/// I_k = k/(πim)·I_{k-1} + ((-1)^k - 1)/(2πim), I_0 = 0; the recurrence is run
/// forward when π|m| > K and backward from a far start otherwise.
template <typename Real>
std::vector<std::complex<Real>> multiplier_moments(int max_power, Index m) {
  using Scalar = std::complex<Real>;
  const Real pi = std::numbers::pi_v<Real>;
  std::vector<Scalar> moments(static_cast<std::size_t>(max_power) + 1);
  if (m == 0) {
    for (int k = 0; k <= max_power; ++k) {
      moments[k] = Scalar((k % 2 == 0) ? Real(1) / Real(k + 1) : Real(0));
    }
  } else {
    const Scalar pim(0, pi * Real(m));
    auto boundary = [&](int k) { return Scalar((k % 2 == 0) ? Real(0) : Real(-2)) / (Real(2) * pim); };
    if (pi * std::abs(Real(m)) > Real(max_power)) {
      moments[0] = Scalar(0);
      for (int k = 1; k <= max_power; ++k) moments[k] = Real(k) / pim * moments[k - 1] + boundary(k);
    } else {
      const int far = max_power + 120;
      Scalar ik(0);
      for (int k = far; k >= 1; --k) {
        const Scalar prev = pim / Real(k) * (ik - boundary(k));
        if (k - 1 <= max_power) moments[k - 1] = prev;
        ik = prev;
      }
      moments[0] = Scalar(0);  // known exactly; the recurrence leaves rounding there
    }
  }
  Scalar ipow(1);
  for (int k = 0; k <= max_power; ++k) {
    moments[k] *= ipow;
    ipow *= Scalar(0, 1);
  }
  return moments;
}

/// Exact P_N M^k on the window {-N,...,N} for k = 0..K, by FFT convolution
/// with the closed-form moment kernels. Immutable after construction.
template <typename Real>
class BasicMultiplierPowers {
 public:
  using Scalar = std::complex<Real>;
  using Seq = BasicCoeffSeq<Real>;

  BasicMultiplierPowers(Index half_width, int max_power)
      : half_width_(half_width), max_power_(max_power), fft_size_(detail::next_pow2(6 * half_width + 2)) {
    if (max_power < 0) throw PreconditionError("MultiplierPowers: negative power");
    const Index kernel_hw = 2 * half_width;
    std::vector<std::vector<Scalar>> kernels(static_cast<std::size_t>(max_power) + 1,
                                             std::vector<Scalar>(static_cast<std::size_t>(fft_size_), Scalar(0)));
    for (Index m = -kernel_hw; m <= kernel_hw; ++m) {
      const auto mom = multiplier_moments<Real>(max_power, m);
      for (int k = 0; k <= max_power; ++k) kernels[k][static_cast<std::size_t>(m + kernel_hw)] = mom[k];
    }
    Eigen::FFT<Real> fft;
    spectra_.resize(kernels.size());
    for (std::size_t k = 0; k < kernels.size(); ++k) fft.fwd(spectra_[k], kernels[k]);
  }

  Index half_width() const { return half_width_; }
  int max_power() const { return max_power_; }

  /// P_N M^k f for k = 0..K (index k of the result).
  std::vector<Seq> apply_all(const Seq& f) const { return apply_range(f, 0, max_power_); }

  std::vector<Seq> apply_range(const Seq& f, int k_first, int k_last) const {
    if (f.half_width() > half_width_) throw PreconditionError("MultiplierPowers: input wider than window");
    const Seq x = f.resized(half_width_);
    std::vector<Scalar> in(static_cast<std::size_t>(fft_size_), Scalar(0));
    for (Index j = -half_width_; j <= half_width_; ++j) in[static_cast<std::size_t>(j + half_width_)] = x[j];
    Eigen::FFT<Real> fft;
    std::vector<Scalar> spec, prod(static_cast<std::size_t>(fft_size_)), out;
    fft.fwd(spec, in);

    std::vector<Seq> result;
    result.reserve(static_cast<std::size_t>(k_last - k_first + 1));
    for (int k = k_first; k <= k_last; ++k) {
      if (k == 0) {
        result.push_back(x);
        continue;
      }
      for (Index i = 0; i < fft_size_; ++i) prod[i] = spec[i] * spectra_[k][i];
      fft.inv(out, prod);
      typename Seq::Vector v(2 * half_width_ + 1);
      // linear-convolution index (j+N) + (m+2N) = n + 3N
      for (Index n = -half_width_; n <= half_width_; ++n) v(n + half_width_) = out[static_cast<std::size_t>(n + 3 * half_width_)];
      result.emplace_back(half_width_, std::move(v));
    }
    return result;
  }

 private:
  Index half_width_;
  int max_power_;
  Index fft_size_;
  std::vector<std::vector<Scalar>> spectra_;
};

using MultiplierPowers = BasicMultiplierPowers<double>;

/// γ = (e(M^k f))_{k=0..K} on f's window.
template <typename Real>
BasicGammaElement<Real> gamma_from_f(const BasicCoeffSeq<Real>& f, int max_power) {
  if (max_power < 1) throw PreconditionError("gamma_from_f: K must be >= 1");
  return BasicGammaElement<Real>(BasicMultiplierPowers<Real>(f.half_width(), max_power).apply_all(f));
}

template <typename Real>
struct BasicReducedGamma {
  BasicGammaElement<Real> gamma;
  std::vector<BasicCoeffSeq<Real>> removed;  // p_k, k = 0..k0
};

/// Subtracts the degree-d partial sums p_k from a_k for k ≤ k0. The caller
/// checks ‖γ̃‖_Γ against r0.
template <typename Real>
BasicReducedGamma<Real> reduce_gamma(const BasicGammaElement<Real>& gamma, Index k0, Index degree) {
  if (k0 > gamma.order()) throw PreconditionError("reduce_gamma: k0 exceeds K");
  std::vector<BasicCoeffSeq<Real>> terms = gamma.terms();
  std::vector<BasicCoeffSeq<Real>> removed;
  for (Index k = 0; k <= k0 && k <= gamma.order(); ++k) {
    removed.push_back(terms[k].partial_sum(degree));
    terms[k] -= removed.back();
  }
  return {BasicGammaElement<Real>(std::move(terms)), std::move(removed)};
}

template <typename Real>
struct BasicL1Estimate {
  Real value;
  Real step;  // quadrature step 1/S
};

/// ‖h‖_{L1(0,1)} by the trapezoid rule on |h| sampled at S points.
template <typename Real>
BasicL1Estimate<Real> l1_norm_estimate(const BasicCoeffSeq<Real>& a, Index sample_count = 0) {
  if (sample_count <= 0) sample_count = detail::next_pow2(std::max<Index>(256, 16 * (2 * a.half_width() + 1)));
  const auto grid = samples_from_coeffs(a, sample_count);
  return {grid.samples().cwiseAbs().mean(), Real(1) / Real(sample_count)};
}

}  // namespace sinezeros
