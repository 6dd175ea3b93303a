#include "isoforge/periodic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "isoforge/error.hpp"

namespace isoforge {

namespace {

using cplx = std::complex<double>;

// Terms are accumulated with a rotating phasor, re-seeded periodically so the
// recurrence error stays at a few ulps for the degrees used here.
constexpr int kReseed = 32;

}  // namespace

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::vector<double> uniform_grid(double period, std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = period * static_cast<double>(j) / static_cast<double>(n);
  return t;
}

PeriodicScalarFn::PeriodicScalarFn(double period, std::vector<double> cos_coeffs,
                                   std::vector<double> sin_coeffs)
    : period_(period), a_(std::move(cos_coeffs)), b_(std::move(sin_coeffs)) {
  if (!(period > 0.0)) throw Error(ErrorCode::InvalidInput, "period must be positive");
  if (a_.empty()) a_.push_back(0.0);
  b_.resize(a_.size(), 0.0);
  if (b_.size() > a_.size()) a_.resize(b_.size(), 0.0);
  b_[0] = 0.0;
}

PeriodicScalarFn PeriodicScalarFn::constant(double period, double value) {
  return PeriodicScalarFn(period, {value}, {0.0});
}

PeriodicScalarFn PeriodicScalarFn::from_samples(double period, std::span<const double> samples) {
  const std::size_t n = samples.size();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "empty sample table");
  Eigen::FFT<double> fft;
  std::vector<double> in(samples.begin(), samples.end());
  std::vector<cplx> spec;
  fft.fwd(spec, in);
  const std::size_t kmax = (n - 1) / 2;  // drops the Nyquist mode for even n
  std::vector<double> a(kmax + 1), b(kmax + 1, 0.0);
  const double inv_n = 1.0 / static_cast<double>(n);
  a[0] = spec[0].real() * inv_n;
  for (std::size_t k = 1; k <= kmax; ++k) {
    a[k] = 2.0 * spec[k].real() * inv_n;
    b[k] = -2.0 * spec[k].imag() * inv_n;
  }
  return PeriodicScalarFn(period, std::move(a), std::move(b));
}

PeriodicScalarFn PeriodicScalarFn::from_function(double period,
                                                 const std::function<double(double)>& fn,
                                                 std::size_t samples) {
  std::vector<double> v(samples);
  const auto t = uniform_grid(period, samples);
  for (std::size_t j = 0; j < samples; ++j) v[j] = fn(t[j]);
  return from_samples(period, v);
}

double PeriodicScalarFn::derivative(double t, int order) const {
  if (order == 0) {
    double out = 0.0;
    eval_derivs(t, std::span<double>(&out, 1));
    return out;
  }
  std::vector<double> out(static_cast<std::size_t>(order) + 1);
  eval_derivs(t, out);
  return out.back();
}

void PeriodicScalarFn::eval_derivs(double t, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (a_.empty()) return;
  out[0] = a_[0];
  const double w = 2.0 * std::numbers::pi / period_;
  const double x = w * t;
  const cplx step(std::cos(x), std::sin(x));
  cplx z(1.0, 0.0);
  const int K = degree();
  const int D = static_cast<int>(out.size());
  for (int k = 1; k <= K; ++k) {
    if (k % kReseed == 0) {
      z = cplx(std::cos(k * x), std::sin(k * x));
    } else {
      z *= step;
    }
    const double c = z.real();
    const double s = z.imag();
    const double ak = a_[static_cast<std::size_t>(k)];
    const double bk = b_[static_cast<std::size_t>(k)];
    if (ak == 0.0 && bk == 0.0) continue;
    double fac = 1.0;
    const double kw = k * w;
    for (int d = 0; d < D; ++d) {
      double term = 0.0;
      switch (d % 4) {
        case 0: term = ak * c + bk * s; break;
        case 1: term = -ak * s + bk * c; break;
        case 2: term = -ak * c - bk * s; break;
        default: term = ak * s - bk * c; break;
      }
      out[static_cast<std::size_t>(d)] += fac * term;
      fac *= kw;
    }
  }
}

std::vector<double> PeriodicScalarFn::sample(std::size_t n, int order) const {
  std::vector<double> out(n);
  const int K = degree();
  if (n == 0) return out;
  if (static_cast<std::size_t>(K) * 2 + 1 > n) {
    // Too few points for an exact inverse transform: evaluate directly.
    const auto t = uniform_grid(period_, n);
    for (std::size_t j = 0; j < n; ++j) out[j] = derivative(t[j], order);
    return out;
  }
  const double w = 2.0 * std::numbers::pi / period_;
  std::vector<cplx> spec(n, cplx(0.0, 0.0));
  spec[0] = (order == 0) ? cplx(a_[0] * static_cast<double>(n), 0.0) : cplx(0.0, 0.0);
  for (int k = 1; k <= K; ++k) {
    // c_k = (a_k - i b_k) / 2 times (i k w)^order
    cplx ck(0.5 * a_[static_cast<std::size_t>(k)], -0.5 * b_[static_cast<std::size_t>(k)]);
    const cplx ikw(0.0, k * w);
    for (int d = 0; d < order; ++d) ck *= ikw;
    spec[static_cast<std::size_t>(k)] = ck * static_cast<double>(n);
    spec[n - static_cast<std::size_t>(k)] = std::conj(ck) * static_cast<double>(n);
  }
  Eigen::FFT<double> fft;
  std::vector<cplx> time;
  fft.inv(time, spec);
  for (std::size_t j = 0; j < n; ++j) out[j] = time[j].real();
  return out;
}

PeriodicScalarFn PeriodicScalarFn::derivative_fn(int order) const {
  const double w = 2.0 * std::numbers::pi / period_;
  std::vector<double> a(a_.size(), 0.0), b(b_.size(), 0.0);
  for (std::size_t k = 1; k < a_.size(); ++k) {
    double re = a_[k], im = b_[k];  // term re cos + im sin
    const double kw = static_cast<double>(k) * w;
    for (int d = 0; d < order; ++d) {
      // d/dt (re cos + im sin) = kw (im cos - re sin)
      const double nre = kw * im;
      const double nim = -kw * re;
      re = nre;
      im = nim;
    }
    a[k] = re;
    b[k] = im;
  }
  if (order == 0) a[0] = a_[0];
  return PeriodicScalarFn(period_, std::move(a), std::move(b));
}

PeriodicScalarFn PeriodicScalarFn::reparametrized(int sigma, double shift) const {
  if (sigma != 1 && sigma != -1) throw Error(ErrorCode::InvalidInput, "sigma must be +-1");
  const double w = 2.0 * std::numbers::pi / period_;
  std::vector<double> a(a_.size()), b(b_.size());
  a[0] = a_[0];
  b[0] = 0.0;
  for (std::size_t k = 1; k < a_.size(); ++k) {
    const double phi = static_cast<double>(k) * w * shift;
    const double c = std::cos(phi), s = std::sin(phi);
    // a cos(k w (sigma t + shift)) + b sin(k w (sigma t + shift))
    a[k] = a_[k] * c + b_[k] * s;
    b[k] = sigma * (-a_[k] * s + b_[k] * c);
  }
  return PeriodicScalarFn(period_, std::move(a), std::move(b));
}

PeriodicScalarFn PeriodicScalarFn::with_period(double period) const {
  return PeriodicScalarFn(period, a_, b_);
}

PeriodicScalarFn PeriodicScalarFn::scaled(double factor) const {
  auto a = a_;
  auto b = b_;
  for (auto& x : a) x *= factor;
  for (auto& x : b) x *= factor;
  return PeriodicScalarFn(period_, std::move(a), std::move(b));
}

double PeriodicScalarFn::spectral_tail() const {
  const std::size_t n = a_.size();
  if (n < 8) return 0.0;
  double tail = 0.0;
  for (std::size_t k = n - n / 8; k < n; ++k) tail = std::max({tail, std::abs(a_[k]), std::abs(b_[k])});
  return tail;
}

std::vector<double> spectral_derivative(double period, std::span<const double> samples, int order) {
  return PeriodicScalarFn::from_samples(period, samples).sample(samples.size(), order);
}

}  // namespace isoforge
