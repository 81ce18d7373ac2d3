#pragma once

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "sinezeros/errors.hpp"

namespace sinezeros {

using Index = Eigen::Index;

namespace detail {

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag())) return false;
  }
  return true;
}

}  // namespace detail

/// Fourier coefficients (c_n) for n in {-N,...,N} of a function on (0,1),
/// c_n = ∫ h(t) e^{-2πint} dt. Entries outside the window are zero.
template <typename Real>
class BasicCoeffSeq {
 public:
  using RealScalar = Real;
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicCoeffSeq() : BasicCoeffSeq(0) {}

  explicit BasicCoeffSeq(Index half_width)
      : half_width_(half_width), entries_(Vector::Zero(2 * checked(half_width) + 1)) {}

  BasicCoeffSeq(Index half_width, Vector entries)
      : half_width_(checked(half_width)), entries_(std::move(entries)) {
    if (entries_.size() != 2 * half_width_ + 1) {
      throw PreconditionError("CoeffSeq: entry count must be 2N+1");
    }
    if (!detail::all_finite(entries_)) {
      throw PreconditionError("CoeffSeq: non-finite entry");
    }
  }

  static BasicCoeffSeq delta(Index half_width, Index n, Scalar value = Scalar(1)) {
    BasicCoeffSeq out(half_width);
    out.coeffRef(n) = value;
    return out;
  }

  /// All-ones sequence on the window (the unit of the entrywise product).
  static BasicCoeffSeq ones(Index half_width) {
    return BasicCoeffSeq(half_width, Vector::Ones(2 * half_width + 1));
  }

  Index half_width() const { return half_width_; }
  const Vector& entries() const { return entries_; }

  bool in_window(Index n) const { return n >= -half_width_ && n <= half_width_; }

  Scalar operator[](Index n) const { return in_window(n) ? entries_(n + half_width_) : Scalar(0); }

  Scalar& coeffRef(Index n) {
    if (!in_window(n)) throw PreconditionError("CoeffSeq: index outside window");
    return entries_(n + half_width_);
  }

  /// ℓ2 norm, which is the L2(0,1) norm of the function by Parseval.
  Real norm() const { return entries_.norm(); }
  Real sup_norm() const { return entries_.size() ? entries_.cwiseAbs().maxCoeff() : Real(0); }

  /// Zero-extended or truncated copy on the window {-M,...,M}.
  BasicCoeffSeq resized(Index new_half_width) const {
    BasicCoeffSeq out(new_half_width);
    const Index w = std::min(new_half_width, half_width_);
    out.entries_.segment(new_half_width - w, 2 * w + 1) = entries_.segment(half_width_ - w, 2 * w + 1);
    return out;
  }

  /// Partial Fourier sum of degree d (entries with |n| > d removed).
  BasicCoeffSeq partial_sum(Index d) const {
    BasicCoeffSeq out(half_width_);
    const Index w = std::min(std::max<Index>(d, -1), half_width_);
    if (w >= 0) out.entries_.segment(half_width_ - w, 2 * w + 1) = entries_.segment(half_width_ - w, 2 * w + 1);
    return out;
  }

  /// a_{-n}; the coefficients of t ↦ h(1-t)
  BasicCoeffSeq reflected() const { return BasicCoeffSeq(half_width_, entries_.reverse()); }

  BasicCoeffSeq& operator+=(const BasicCoeffSeq& o) { return combine(o, Real(1)); }
  BasicCoeffSeq& operator-=(const BasicCoeffSeq& o) { return combine(o, Real(-1)); }
  BasicCoeffSeq& operator*=(Scalar s) {
    entries_ *= s;
    return *this;
  }

  friend BasicCoeffSeq operator+(BasicCoeffSeq a, const BasicCoeffSeq& b) { return a += b; }
  friend BasicCoeffSeq operator-(BasicCoeffSeq a, const BasicCoeffSeq& b) { return a -= b; }
  friend BasicCoeffSeq operator*(Scalar s, BasicCoeffSeq a) { return a *= s; }
  friend BasicCoeffSeq operator*(BasicCoeffSeq a, Scalar s) { return a *= s; }
  friend BasicCoeffSeq operator-(BasicCoeffSeq a) { return a *= Scalar(-1); }

  /// Equality after zero-extension to the common window.
  friend bool operator==(const BasicCoeffSeq& a, const BasicCoeffSeq& b) {
    const Index w = std::max(a.half_width_, b.half_width_);
    for (Index n = -w; n <= w; ++n) {
      if (a[n] != b[n]) return false;
    }
    return true;
  }

  bool isApprox(const BasicCoeffSeq& o, Real tol) const { return (*this - o).norm() <= tol; }

 private:
  static Index checked(Index half_width) {
    if (half_width < 0) throw PreconditionError("CoeffSeq: negative half-width");
    return half_width;
  }

  BasicCoeffSeq& combine(const BasicCoeffSeq& o, Real sign) {
    if (o.half_width_ > half_width_) *this = resized(o.half_width_);
    entries_.segment(half_width_ - o.half_width_, o.entries_.size()) += sign * o.entries_;
    return *this;
  }

  Index half_width_;
  Vector entries_;
};

/// Samples h(j/S), j = 0..S-1, on the periodic grid of (0,1). The optional
/// endpoint h(1) marks the data as non-periodic (see coeffs_from_samples).
template <typename Real>
class BasicGridFunction {
 public:
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit BasicGridFunction(Vector samples, std::optional<Scalar> endpoint = std::nullopt)
      : samples_(std::move(samples)), endpoint_(endpoint) {
    const Index s = samples_.size();
    if (s < 1 || (s & (s - 1)) != 0) throw PreconditionError("GridFunction: sample count must be a power of two");
    if (!detail::all_finite(samples_)) throw PreconditionError("GridFunction: non-finite sample");
    if (endpoint_ && !(std::isfinite(endpoint_->real()) && std::isfinite(endpoint_->imag()))) {
      throw PreconditionError("GridFunction: non-finite endpoint");
    }
  }

  template <typename Fn>
  static BasicGridFunction sample(Fn&& h, Index sample_count, bool with_endpoint = false) {
    Vector v(sample_count);
    for (Index j = 0; j < sample_count; ++j) v(j) = Scalar(h(Real(j) / Real(sample_count)));
    std::optional<Scalar> end;
    if (with_endpoint) end = Scalar(h(Real(1)));
    return BasicGridFunction(std::move(v), end);
  }

  Index sample_count() const { return samples_.size(); }
  const Vector& samples() const { return samples_; }
  const std::optional<Scalar>& endpoint() const { return endpoint_; }
  Real step() const { return Real(1) / Real(samples_.size()); }

 private:
  Vector samples_;
  std::optional<Scalar> endpoint_;
};

/// Truncated element γ = (a_0,...,a_K) of Γ with
/// ‖γ‖_Γ = ‖a_0‖ + Σ_{k≥1} ‖a_k‖/(k-1)!.
template <typename Real>
class BasicGammaElement {
 public:
  using Seq = BasicCoeffSeq<Real>;

  BasicGammaElement() = default;
  explicit BasicGammaElement(std::vector<Seq> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw PreconditionError("GammaElement: needs at least a_0");
  }

  Index order() const { return static_cast<Index>(terms_.size()) - 1; }
  const std::vector<Seq>& terms() const { return terms_; }
  const Seq& operator[](Index k) const { return terms_.at(static_cast<std::size_t>(k)); }
  Index half_width() const {
    Index w = 0;
    for (const auto& a : terms_) w = std::max(w, a.half_width());
    return w;
  }

  Real norm() const {
    Real total = 0;
    Real factorial = 1;  // (k-1)!
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      if (k >= 2) factorial *= Real(k - 1);
      total += terms_[k].norm() / factorial;
    }
    return total;
  }

  friend BasicGammaElement operator-(const BasicGammaElement& a, const BasicGammaElement& b) {
    const std::size_t n = std::max(a.terms_.size(), b.terms_.size());
    std::vector<Seq> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
      Seq t = k < a.terms_.size() ? a.terms_[k] : Seq(0);
      if (k < b.terms_.size()) t -= b.terms_[k];
      out.push_back(std::move(t));
    }
    return BasicGammaElement(std::move(out));
  }

 private:
  std::vector<Seq> terms_;
};

using Complex = std::complex<double>;
using CoeffSeq = BasicCoeffSeq<double>;
using GridFunction = BasicGridFunction<double>;
using GammaElement = BasicGammaElement<double>;

}  // namespace sinezeros
