#pragma once

#include <utility>

#include "sinezeros/coeff_seq.hpp"

namespace sinezeros {

/// F(z) = sin z + ∫₀¹ f(t) e^{iz(2t-1)} dt, stored through the Fourier
/// coefficients of f on (0,1). The shift α and the original leading
/// amplitudes are kept for reporting; the stored f is always normalized.
class SineType {
 public:
  explicit SineType(CoeffSeq f, Complex alpha = Complex(0), Complex m_minus = Complex(0, 0.5),
                    Complex m_plus = Complex(0, -0.5));

  const CoeffSeq& f_coeffs() const { return f_; }
  Complex alpha() const { return alpha_; }
  Complex m_minus() const { return m_minus_; }
  Complex m_plus() const { return m_plus_; }

 private:
  CoeffSeq f_;
  Complex alpha_;
  Complex m_minus_;
  Complex m_plus_;
};

/// Distance to the lattice -πℤ inside which the offending partial-fraction
/// term is replaced by its Taylor form.
inline constexpr double kPoleRadius = 1e-2;
inline constexpr int kMaxDerivativeOrder = 8;

/// Normalizes m_- e^{-iz} + m_+ e^{iz} + ∫_{-1}^{1} f(t) e^{izt} dt.
///
/// `f_raw` holds b_m with f(t) = Σ b_m e^{iπmt} on (-1,1). With
/// α = (1/2i) Log(-m_-/m_+) the result represents
/// F̃(z) = F(z + α) / (2i m_+ e^{iα}) in the (0,1) form, truncated to the
/// window `out_half_width` (default: max(width of f_raw, 256) when α ≠ 0).
SineType normalize(Complex m_minus, Complex m_plus, const CoeffSeq& f_raw, Index out_half_width = -1);

/// F(z) via F(z) = sin z·(1 + Σ c_n/(z+πn)); terms within kPoleRadius of
/// their pole use the entire form c_n (-1)^n sinc(z+πn).
Complex evaluate(const SineType& F, Complex z);

/// F^{(j)}(z), 0 ≤ j ≤ 8, by analytic differentiation of the
/// partial-fraction form.
Complex evaluate_derivative(const SineType& F, Complex z, int order);

/// j-th derivative of ∫₀¹ h(t) e^{iz(2t-1)} dt for h with coefficients `c`.
Complex evaluate_integral_part(const CoeffSeq& c, Complex z, int order);

/// (F(z), F'(z)) in one pass over the coefficients.
std::pair<Complex, Complex> evaluate_with_derivative(const SineType& F, Complex z);

/// c_n ↦ (-1)^n c_n; converts between the (0,1) and (-1,1) coefficient
/// conventions. Self-inverse.
CoeffSeq to_symmetric_coeffs(const CoeffSeq& g);

/// j-th derivative of sinc(w) = sin(w)/w (Taylor series; intended for |w| ≲ 3).
Complex sinc_derivative(Complex w, int order);

}  // namespace sinezeros
