#include "sinezeros/sine_type.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace sinezeros {

namespace {

constexpr double kPi = std::numbers::pi;
// beyond this distance the Leibniz form of (sin z/(z+πn))^{(j)} is well conditioned
constexpr double kLeibnizRadius = 3.0;

Complex sinc(Complex x) {
  if (std::abs(x) < 1e-3) return sinc_derivative(x, 0);
  return std::sin(x) / x;
}

double sign_of_index(Index n) { return (n % 2 == 0) ? 1.0 : -1.0; }

Complex sin_derivative(Complex z, int order) {
  switch (((order % 4) + 4) % 4) {
    case 0: return std::sin(z);
    case 1: return std::cos(z);
    case 2: return -std::sin(z);
    default: return -std::cos(z);
  }
}

}  // namespace

SineType::SineType(CoeffSeq f, Complex alpha, Complex m_minus, Complex m_plus)
    : f_(std::move(f)), alpha_(alpha), m_minus_(m_minus), m_plus_(m_plus) {
  if (m_minus_ == Complex(0) || m_plus_ == Complex(0)) throw PreconditionError("degenerate leading term");
  if (!std::isfinite(alpha_.real()) || !std::isfinite(alpha_.imag())) throw PreconditionError("SineType: non-finite alpha");
}

SineType normalize(Complex m_minus, Complex m_plus, const CoeffSeq& f_raw, Index out_half_width) {
  if (m_minus == Complex(0) || m_plus == Complex(0)) throw PreconditionError("degenerate leading term");
  const Complex alpha = std::log(-m_minus / m_plus) / Complex(0, 2);
  const Complex kappa = 1.0 / (Complex(0, 2) * m_plus * std::exp(Complex(0, 1) * alpha));
  const Index raw_hw = f_raw.half_width();
  if (out_half_width < 0) out_half_width = (alpha == Complex(0)) ? raw_hw : std::max<Index>(raw_hw, 256);

  // e_n(f̃) = (-1)^n κ Σ_m b_m ∫_{-1}^{1} e^{i(π(m-n)+α)t} dt
  CoeffSeq out(out_half_width);
  for (Index n = -out_half_width; n <= out_half_width; ++n) {
    Complex acc(0);
    for (Index m = -raw_hw; m <= raw_hw; ++m) {
      if (f_raw[m] == Complex(0)) continue;
      acc += f_raw[m] * 2.0 * sinc(kPi * double(m - n) + alpha);
    }
    out.coeffRef(n) = sign_of_index(n) * kappa * acc;
  }
  return SineType(std::move(out), alpha, m_minus, m_plus);
}

Complex sinc_derivative(Complex w, int order) {
  // sinc(w) = Σ_{p even} (-1)^{p/2} w^p/(p+1)!, so
  // sinc^{(j)}(w) = Σ_{p even, p≥j} (-1)^{p/2} w^{p-j} / ((p+1)(p-j)!)
  Complex sum(0);
  Complex wq(1);  // w^q / q!, q = p - j
  for (int q = 0; q < 80; ++q) {
    const int p = q + order;
    if (p % 2 == 0) {
      const double sgn = (p / 2) % 2 == 0 ? 1.0 : -1.0;
      const Complex term = sgn * wq / double(p + 1);
      sum += term;
      if (q > 4 && std::abs(term) < 1e-18 * std::max(1.0, std::abs(sum))) break;
    }
    wq *= w / double(q + 1);
  }
  return sum;
}

Complex evaluate(const SineType& F, Complex z) { return evaluate_derivative(F, z, 0); }

Complex evaluate_derivative(const SineType& F, Complex z, int order) {
  if (order < 0 || order > kMaxDerivativeOrder) throw PreconditionError("evaluate_derivative: order out of range");
  return sin_derivative(z, order) + evaluate_integral_part(F.f_coeffs(), z, order);
}

Complex evaluate_integral_part(const CoeffSeq& c, Complex z, int order) {
  if (order < 0 || order > kMaxDerivativeOrder) throw PreconditionError("evaluate_integral_part: order out of range");
  const Index hw = c.half_width();
  const double near_radius = (order == 0) ? kPoleRadius : kLeibnizRadius;

  std::array<Complex, kMaxDerivativeOrder + 2> power_sums{};  // P_q = Σ_far c_n (z+πn)^{-q}
  Complex near(0);
  for (Index n = -hw; n <= hw; ++n) {
    const Complex cn = c[n];
    if (cn == Complex(0)) continue;
    const Complex w = z + kPi * double(n);
    if (std::abs(w) < near_radius) {
      near += cn * sign_of_index(n) * sinc_derivative(w, order);
      continue;
    }
    const Complex inv = 1.0 / w;
    Complex pw = inv;
    for (int q = 1; q <= order + 1; ++q) {
      power_sums[q] += cn * pw;
      pw *= inv;
    }
  }

  // (sin z · w^{-1})^{(j)} = Σ_i C(j,i) sin^{(i)}(z) (-1)^{j-i} (j-i)! w^{-(j-i)-1}
  Complex result = near;
  double binom = 1.0;
  for (int i = 0; i <= order; ++i) {
    if (i > 0) binom = binom * double(order - i + 1) / double(i);
    const int r = order - i;
    double fact = 1.0;
    for (int t = 2; t <= r; ++t) fact *= t;
    const double sgn = (r % 2 == 0) ? 1.0 : -1.0;
    result += binom * sgn * fact * sin_derivative(z, i) * power_sums[r + 1];
  }
  return result;
}

std::pair<Complex, Complex> evaluate_with_derivative(const SineType& F, Complex z) {
  const CoeffSeq& c = F.f_coeffs();
  const Index hw = c.half_width();
  Complex p1(0), p2(0), near0(0), near1(0);
  for (Index n = -hw; n <= hw; ++n) {
    const Complex cn = c[n];
    if (cn == Complex(0)) continue;
    const Complex w = z + kPi * double(n);
    if (std::abs(w) < kLeibnizRadius) {
      const double s = sign_of_index(n);
      near0 += cn * s * sinc_derivative(w, 0);
      near1 += cn * s * sinc_derivative(w, 1);
      continue;
    }
    const Complex inv = 1.0 / w;
    p1 += cn * inv;
    p2 += cn * inv * inv;
  }
  const Complex s = std::sin(z);
  const Complex co = std::cos(z);
  return {s * (1.0 + p1) + near0, co * (1.0 + p1) - s * p2 + near1};
}

CoeffSeq to_symmetric_coeffs(const CoeffSeq& g) {
  CoeffSeq out = g;
  for (Index n = -g.half_width(); n <= g.half_width(); ++n) out.coeffRef(n) *= sign_of_index(n);
  return out;
}

}  // namespace sinezeros
