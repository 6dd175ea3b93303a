#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace isoforge {

/// Real function of period l stored as a truncated Fourier series
///
///   f(t) = a_0 + sum_{k=1..K} a_k cos(k w t) + b_k sin(k w t),   w = 2 pi / l.
///
/// Derivatives are evaluated term-wise. Instances are immutable.
class PeriodicScalarFn {
 public:
  PeriodicScalarFn() = default;
  /// `cos_coeffs[k]` = a_k, `sin_coeffs[k]` = b_k (b_0 ignored); both of length K+1.
  PeriodicScalarFn(double period, std::vector<double> cos_coeffs, std::vector<double> sin_coeffs);

  static PeriodicScalarFn constant(double period, double value);
  /// Trigonometric interpolation of n uniform samples at t_j = j l / n.
  /// The Nyquist mode of even-length tables is dropped.
  static PeriodicScalarFn from_samples(double period, std::span<const double> samples);
  static PeriodicScalarFn from_function(double period, const std::function<double(double)>& fn,
                                        std::size_t samples);

  double period() const { return period_; }
  int degree() const { return static_cast<int>(a_.size()) - 1; }
  const std::vector<double>& cos_coeffs() const { return a_; }
  const std::vector<double>& sin_coeffs() const { return b_; }
  bool empty() const { return a_.empty(); }

  double operator()(double t) const { return derivative(t, 0); }
  double derivative(double t, int order) const;
  /// out[d] = f^{(d)}(t) for d = 0..out.size()-1, sharing one trigonometric sweep.
  void eval_derivs(double t, std::span<double> out) const;

  /// Values of f^{(order)} on the uniform grid t_j = j l / n.
  std::vector<double> sample(std::size_t n, int order = 0) const;

  PeriodicScalarFn derivative_fn(int order = 1) const;
  /// t -> f(sigma t + shift), sigma = +-1. Exact on coefficients.
  PeriodicScalarFn reparametrized(int sigma, double shift) const;
  /// Same coefficients, new period (rescales the argument).
  PeriodicScalarFn with_period(double period) const;
  PeriodicScalarFn scaled(double factor) const;

  double mean() const { return a_.empty() ? 0.0 : a_[0]; }
  /// Largest |a_k|, |b_k| among the top eighth of the stored modes; a cheap
  /// smoothness / closure indicator for fitted data.
  double spectral_tail() const;

 private:
  double period_ = 1.0;
  std::vector<double> a_;
  std::vector<double> b_;
};

/// Uniform grid t_j = j l / n, j = 0..n-1.
std::vector<double> uniform_grid(double period, std::size_t n);

/// Spectral derivative of uniform periodic samples (via fit + resample).
std::vector<double> spectral_derivative(double period, std::span<const double> samples, int order = 1);

bool is_power_of_two(std::size_t n);

}  // namespace isoforge
