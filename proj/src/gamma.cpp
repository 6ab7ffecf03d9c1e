#include "gkz/gamma.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace gkz {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

// e^z - 1 without cancellation for small z.
cplx expm1(cplx z) {
  const double x = z.real(), y = z.imag();
  const double s = std::sin(0.5 * y);
  return {std::expm1(x) * std::cos(y) - 2.0 * s * s, std::exp(x) * std::sin(y)};
}

// Stirling series, for Re z >= 0.5 and |z| large.
cplx stirling(cplx z) {
  static constexpr std::array<double, 8> b = {1.0 / 12,        -1.0 / 360,        1.0 / 1260,
                                              -1.0 / 1680,     1.0 / 1188,        -691.0 / 360360,
                                              1.0 / 156,       -3617.0 / 122400};
  const cplx inv = 1.0 / z, inv2 = inv * inv;
  cplx sum = 0.0, pw = inv;
  for (double c : b) {
    sum += c * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + sum;
}

// Lanczos approximation, g = 7, for Re z >= 0.5.
cplx lanczos(cplx z) {
  static constexpr std::array<double, 9> c = {0.99999999999980993,  676.5203681218851,
                                              -1259.1392167224028,  771.32342877765313,
                                              -176.61502916214059,  12.507343278686905,
                                              -0.13857109526572012, 9.9843695780195716e-6,
                                              1.5056327351493116e-7};
  z -= 1.0;
  cplx x = c[0];
  for (int i = 1; i < 9; ++i) x += c[i] / (z + double(i));
  const cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

}  // namespace

cplx log_sin_pi(cplx z) {
  // sin(pi (z - k)) = (-1)^k sin(pi z)
  const double k = std::round(z.real());
  const cplx w(z.real() - k, z.imag());
  const double sign = std::fmod(std::fabs(k), 2.0) == 1.0 ? kPi : 0.0;
  if (w.imag() >= 0) {
    // sin(pi w) = e^{-i pi w} (e^{2 pi i w} - 1) / (2i)
    return -kI * kPi * w + std::log(expm1(2.0 * kPi * kI * w) / (2.0 * kI)) + kI * sign;
  }
  return std::conj(log_sin_pi(std::conj(w))) + kI * sign;
}

cplx log_gamma(cplx z) {
  if (z.real() < 0.5) return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  if (std::abs(z) > 12.0) return stirling(z);
  return lanczos(z);
}

bool is_nonpositive_integer(cplx z, double tol) {
  if (std::fabs(z.imag()) > tol || z.real() > 0.5) return false;
  return std::fabs(z.real() - std::round(z.real())) <= tol;
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

cplx rgamma(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

}  // namespace gkz
