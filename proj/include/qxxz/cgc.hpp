#pragma once
// q-Clebsch-Gordan coefficients <j, 1/2, J; m, alpha, m+alpha>_q.
// All spins and weights are passed doubled.

#include <array>
#include <string>

#include "qnum.hpp"

namespace qxxz {

class NegativeRadicand : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {
inline double checked_root(double x, const char* where) {
  if (x < -1e-13) throw NegativeRadicand(std::string(where) + ": negative q-integer ratio under square root");
  return std::sqrt(std::max(x, 0.0));
}
inline bool weights_ok(int two_j, int two_m) { return std::abs(two_m) <= two_j && (two_j - two_m) % 2 == 0; }
}  // namespace detail

// Coefficient of |j,m> (x) |1/2,alpha> in |J, m+alpha>.
inline cplx cgc(const QPhase& ph, int two_j, int two_m, int two_alpha, int two_J) {
  if (std::abs(two_alpha) != 1 || std::abs(two_J - two_j) != 1 || two_J < 0)
    throw std::invalid_argument("cgc: need alpha = +-1/2 and J = j +- 1/2");
  if (!detail::weights_ok(two_j, two_m) || !detail::weights_ok(two_J, two_m + two_alpha)) return 0.0;
  const double j = two_j / 2.0, m = two_m / 2.0, a = two_alpha / 2.0;
  const double den = q_int(ph, 2 * j + 1);
  if (std::abs(den) < 1e-14) throw std::domain_error("cgc: [2j+1]_q vanishes");
  if (two_J > two_j)
    return ph.pow(-a * j + m / 2) * detail::checked_root(q_int(ph, j + 2 * a * m + 1) / den, "cgc");
  return 2 * a * ph.pow(a * (j + 1) + m / 2) * detail::checked_root(q_int(ph, j - 2 * a * m) / den, "cgc");
}

// [2j+1]^{1/2} * cgc, evaluated without dividing by [2j+1].
inline cplx cgc_scaled(const QPhase& ph, int two_j, int two_m, int two_alpha, int two_J) {
  if (!detail::weights_ok(two_j, two_m) || !detail::weights_ok(two_J, two_m + two_alpha)) return 0.0;
  const double j = two_j / 2.0, m = two_m / 2.0, a = two_alpha / 2.0;
  if (q_int(ph, 2 * j + 1) < -1e-12) throw NegativeRadicand("cgc_scaled: [2j+1]_q is negative");
  if (two_J > two_j)
    return ph.pow(-a * j + m / 2) * detail::checked_root(q_int(ph, j + 2 * a * m + 1), "cgc_scaled");
  return 2 * a * ph.pow(a * (j + 1) + m / 2) * detail::checked_root(q_int(ph, j - 2 * a * m), "cgc_scaled");
}

struct UnitarityResult {
  bool ok = true;
  double max_residual = 0.0;
  int bad_two_J1 = 0, bad_two_J2 = 0, bad_two_M = 0;
};

// sum_{m,alpha} C(j,1/2,J';m,alpha) C(j,1/2,J'';m,alpha) = delta, bilinear (no conjugation).
inline UnitarityResult verify_unitarity(int two_j, const QPhase& ph, double tol = 1e-12) {
  UnitarityResult res;
  for (int two_M = -(two_j + 1); two_M <= two_j + 1; two_M += 2)
    for (int J1 : {two_j - 1, two_j + 1})
      for (int J2 : {two_j - 1, two_j + 1}) {
        if (J1 < 0 || J2 < 0 || std::abs(two_M) > J1 || std::abs(two_M) > J2) continue;
        cplx s = 0;
        for (int a : {1, -1}) s += cgc(ph, two_j, two_M - a, a, J1) * cgc(ph, two_j, two_M - a, a, J2);
        double r = std::abs(s - (J1 == J2 ? 1.0 : 0.0));
        if (r > res.max_residual) {
          res.max_residual = r;
          if (r > tol) res = {false, r, J1, J2, two_M};
        }
      }
  return res;
}

struct AppendixCReport {
  // reflection, two product identities, the two sum rules
  std::array<double, 5> max_residual{};
  std::array<int, 5> instances{};
  // amended forms of the two that fail as printed: lower branch of the returning product with
  // q^{+2 alpha (2j+1)}, and the first sum rule with the +- weight
  std::array<double, 2> amended_residual{};
  int skipped = 0;
  bool passes(double tol) const {
    for (double r : max_residual)
      if (!(r < tol)) return false;
    return true;
  }
};

inline AppendixCReport verify_appendix_c(int two_jmax, const QPhase& ph) {
  AppendixCReport rep;
  auto C = [&](int j, int m, int a, int J) { return cgc(ph, j, m, a, J); };
  auto vanishes = [&](int two_s) { return std::abs(q_int(ph, two_s + 1)) < 1e-12; };
  auto note = [&](int id, cplx lhs, cplx rhs) {
    double r = std::abs(lhs - rhs);
    rep.max_residual[id] = std::max(rep.max_residual[id], r);
    rep.instances[id]++;
  };
  for (int j = 0; j <= two_jmax; ++j) {
    if (vanishes(j)) continue;
    for (int m = -j; m <= j; m += 2)
      for (int a : {1, -1}) {
        const double al = a / 2.0, jj = j / 2.0, mm = m / 2.0;
        for (int pm : {1, -1}) {
          const int jp = j + pm;      // j +- 1/2
          const int jpp = j + 2 * pm; // j +- 1
          if (jp < 0) continue;
          if (vanishes(jp)) {
            rep.skipped++;
            continue;
          }
          // reflection
          if (std::abs(m + a) <= jp) {
            cplx lhs = C(jp, m + a, -a, j);
            cplx rhs = -pm * 2.0 * al * ph.pow(-al) * std::sqrt(q_int(ph, j + 1) / q_int(ph, j + 1 + pm)) *
                       C(j, m, a, jp);
            note(0, lhs, rhs);
          }
          // product identity with endpoint j +- 1
          if (jpp >= 0) {
            cplx lhs = C(j, m, a, jp) * C(jp, m + a, -a, jpp);
            cplx rhs = ph.pow(2 * al) * C(j, m, -a, jp) * C(jp, m - a, a, jpp);
            note(1, lhs, rhs);
          }
          // product identity returning to j
          {
            const double half = (1 + pm) / 2.0;
            const double num = q_int(ph, jj + pm * 2 * al * mm + half);
            const double den = q_int(ph, jj - pm * 2 * al * mm + half);
            cplx lhs = C(j, m, a, jp) * C(jp, m + a, -a, j);
            cplx rhs_c = C(j, m, -a, jp) * C(jp, m - a, a, j);
            if (std::abs(den) < 1e-12) {
              rep.skipped++;  // ratio form is indeterminate here
            } else {
              note(2, lhs, -ph.pow(-2 * al * (2 * jj + 1)) * (num / den) * rhs_c);
              cplx amended = -ph.pow(-pm * 2 * al * (2 * jj + 1)) * (num / den) * rhs_c;
              rep.amended_residual[0] = std::max(rep.amended_residual[0], std::abs(lhs - amended));
            }
          }
        }
        // sum rules
        cplx s4 = 0, s5 = 0, s4w = 0;
        for (int pm : {1, -1}) {
          const int jp = j + pm;
          if (jp < 0) continue;
          s4 += C(j, m, a, jp) * cgc_scaled(ph, jp, m + a, a, j);
          s4w += double(pm) * C(j, m, a, jp) * cgc_scaled(ph, jp, m + a, a, j);
          s5 += double(pm) * C(j, m, a, jp) * cgc_scaled(ph, jp, m + a, -a, j);
        }
        if (std::abs(m + 2 * a) <= j) {
          note(3, s4, 0.0);
          rep.amended_residual[1] = std::max(rep.amended_residual[1], std::abs(s4w));
        }
        note(4, s5, -2.0 * al * ph.pow(-al) * std::sqrt(q_int(ph, j + 1)));
      }
  }
  return rep;
}

}  // namespace qxxz
