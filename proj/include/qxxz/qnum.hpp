#pragma once
// Arithmetic of q = exp(i*pi/r) on the unit circle.

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qxxz {

using cplx = std::complex<double>;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kDefaultTol = 1e-10;

class QPhase {
 public:
  explicit QPhase(double r) : r_(r) {
    if (!(r > 1.0)) throw std::invalid_argument("QPhase: r must exceed 1");
    int ri = static_cast<int>(std::lround(r));
    integral_ = std::abs(r - ri) < 1e-12;
    if (integral_ && ri == 2) throw std::invalid_argument("QPhase: r = 2 (q = i) is not supported");
    q_ = std::polar(1.0, kPi / r);
  }

  double r() const { return r_; }
  cplx q() const { return q_; }
  bool is_root_of_unity() const { return integral_; }
  int r_int() const { return static_cast<int>(std::lround(r_)); }

  // q^x for real x, taken as exp(i*pi*x/r) so half-integer powers are unambiguous.
  cplx pow(double x) const { return std::polar(1.0, kPi * x / r_); }
  // q + q^{-1}
  double loop() const { return 2.0 * std::cos(kPi / r_); }

 private:
  double r_;
  bool integral_ = false;
  cplx q_;
};

// [n]_q as a real sine ratio.
inline double q_int(const QPhase& ph, double n) {
  return std::sin(n * kPi / ph.r()) / std::sin(kPi / ph.r());
}

inline double q_factorial(const QPhase& ph, int n) {
  if (n < 0) throw std::domain_error("q_factorial: negative argument");
  if (ph.is_root_of_unity() && n >= ph.r_int())
    throw std::domain_error("q_factorial: [" + std::to_string(ph.r_int()) + "]_q = 0 makes [" +
                            std::to_string(n) + "]! vanish");
  double f = 1.0;
  for (int k = 1; k <= n; ++k) f *= q_int(ph, k);
  return f;
}

inline bool approx_eq(cplx a, cplx b, double tol = kDefaultTol) {
  if (!(tol > 0)) throw std::invalid_argument("approx_eq: tol must be positive");
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= tol * scale;
}

// Sign of [2j+1]_q at a root of unity: positive on 2lr < 2j+1 < (2l+1)r.
inline int band_sign(const QPhase& ph, int two_j_plus_1) {
  double v = q_int(ph, two_j_plus_1);
  if (std::abs(v) < 1e-14) return 0;
  return v > 0 ? 1 : -1;
}

}  // namespace qxxz
