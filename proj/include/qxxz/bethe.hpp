#pragma once
// Coordinate Bethe ansatz: amplitudes, wavefunction, root solver, PT factor.

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <json.hpp>

#include "chain.hpp"
#include "linops.hpp"
#include "version.hpp"

namespace qxxz {

namespace bethe_detail {
inline cplx expi(cplx x) { return std::exp(cplx(0, 1) * x); }
}  // namespace bethe_detail

// s(k1,k2) = 1 - (q+q^{-1}) e^{ik1} + e^{i(k1+k2)}
inline cplx bethe_s(const QPhase& ph, cplx k1, cplx k2) {
  using bethe_detail::expi;
  return 1.0 - ph.loop() * expi(k1) + expi(k1 + k2);
}
inline cplx bethe_B(const QPhase& ph, cplx k1, cplx k2) { return bethe_s(ph, -k1, k2) * bethe_s(ph, k2, k1); }
// beta(k) = (1 - q e^{-ik}) e^{i(N+1)k}
inline cplx bethe_beta(int N, const QPhase& ph, cplx k) {
  using bethe_detail::expi;
  return (1.0 - ph.q() * expi(-k)) * expi(double(N + 1) * k);
}

// A(k_1..k_n) = prod_j beta(-k_j) prod_{j<l} B(-k_j,k_l) e^{-ik_l}
inline cplx amplitude(int N, const QPhase& ph, const std::vector<cplx>& k) {
  cplx a = 1.0;
  for (cplx kj : k) a *= bethe_beta(N, ph, -kj);
  for (size_t j = 0; j < k.size(); ++j)
    for (size_t l = j + 1; l < k.size(); ++l) a *= bethe_B(ph, -k[j], k[l]) * bethe_detail::expi(-k[l]);
  return a;
}

inline int permutation_sign(const std::vector<int>& p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

// psi(x_1<...<x_n): sum over p and eps of sgn(p) prod(eps) A(eps k_p) e^{i sum eps_i k_{p(i)} x_i}
inline cplx bethe_psi(int N, const QPhase& ph, const std::vector<cplx>& k, const std::vector<int>& x) {
  const int n = static_cast<int>(k.size());
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  cplx tot = 0;
  std::vector<cplx> kk(n);
  do {
    const int sp = permutation_sign(p);
    for (int mask = 0; mask < (1 << n); ++mask) {
      int se = 1;
      cplx phase = 0;
      for (int i = 0; i < n; ++i) {
        const int e = (mask >> i) & 1 ? -1 : 1;
        se *= e;
        kk[i] = double(e) * k[p[i]];
        phase += kk[i] * double(x[i]);
      }
      tot += double(sp * se) * amplitude(N, ph, kk) * bethe_detail::expi(phase);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return tot;
}

// down spins at sites x_1 < ... < x_n; index sum_x 2^{N-x}
inline CVector build_bethe_vector(int N, const QPhase& ph, const std::vector<cplx>& k) {
  check_dim(1L << N, "build_bethe_vector");
  const int n = static_cast<int>(k.size());
  CVector v = CVector::Zero(1L << N);
  for (long idx = 0; idx < (1L << N); ++idx) {
    if (popcount_down(idx) != n) continue;
    std::vector<int> x;
    for (int s = 1; s <= N; ++s)
      if (site_bit(idx, N, s)) x.push_back(s);
    v(idx) = bethe_psi(N, ph, k, x);
  }
  return v;
}

// e^{2iNk_j} den_j - num_j, with num/den the products of B(-k_j,k_l) and B(k_j,k_l)
inline Eigen::VectorXcd bae_polynomial_residual(int N, const QPhase& ph, const Eigen::VectorXcd& k) {
  const long n = k.size();
  Eigen::VectorXcd f(n);
  for (long j = 0; j < n; ++j) {
    cplx num = 1, den = 1;
    for (long l = 0; l < n; ++l)
      if (l != j) {
        num *= bethe_B(ph, -k(j), k(l));
        den *= bethe_B(ph, k(j), k(l));
      }
    f(j) = bethe_detail::expi(2.0 * N * k(j)) * den - num;
  }
  return f;
}

// max_j |e^{2iNk_j} - prod B(-k_j,k_l)/B(k_j,k_l)|
inline double bae_residual(int N, const QPhase& ph, const std::vector<cplx>& k) {
  double worst = 0;
  for (size_t j = 0; j < k.size(); ++j) {
    cplx num = 1, den = 1;
    for (size_t l = 0; l < k.size(); ++l)
      if (l != j) {
        num *= bethe_B(ph, -k[j], k[l]);
        den *= bethe_B(ph, k[j], k[l]);
      }
    const cplx lhs = bethe_detail::expi(2.0 * N * k[j]);
    worst = std::max(worst, std::abs(den) > 1e-8 ? std::abs(lhs - num / den) : std::abs(lhs * den - num));
  }
  return worst;
}

struct BetheRootSet {
  int N = 0;
  std::vector<cplx> roots;
  double residual = 0;
  int real_roots = 0;
  int m_pairs = 0;
  bool classified = true;
  int n() const { return static_cast<int>(roots.size()); }
};

// k -> Re k in [0, pi], using k ~ k + 2pi and k ~ -k
inline cplx canonical_root(cplx k) {
  double re = std::remainder(k.real(), 2 * kPi);
  cplx c(re, k.imag());
  if (re < 0) c = -c;
  return c;
}

inline void classify(BetheRootSet& rs, double tol = 1e-7) {
  const int n = rs.n();
  std::vector<bool> used(n, false);
  rs.real_roots = rs.m_pairs = 0;
  for (int i = 0; i < n; ++i)
    if (std::abs(rs.roots[i].imag()) < tol) {
      used[i] = true;
      rs.real_roots++;
    }
  auto same = [&](cplx a, cplx b) { return std::abs(canonical_root(a) - canonical_root(b)) < tol; };
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      const cplx c = std::conj(rs.roots[i]);
      if (same(c, rs.roots[j])) {
        used[i] = used[j] = true;
        rs.m_pairs++;
        break;
      }
    }
  }
  rs.classified = std::all_of(used.begin(), used.end(), [](bool b) { return b; });
}

struct BetheSolveStats {
  int seeds = 0, converged = 0, rejected_trivial = 0, rejected_null = 0, rejected_residual = 0, duplicates = 0;
};

struct BetheState {
  BetheRootSet roots;
  CVector vector;
  cplx energy;               // Rayleigh quotient
  double eigen_residual = 0; // |Hv - Ev|/|v|
  double hw_residual = 0;    // |S^+ v|/|v|
};

namespace bethe_detail {

inline bool newton(int N, const QPhase& ph, Eigen::VectorXcd& k) {
  const long n = k.size();
  Eigen::VectorXcd f = bae_polynomial_residual(N, ph, k);
  for (int it = 0; it < 80; ++it) {
    double fn = f.norm();
    if (fn < 1e-14) return true;
    Eigen::MatrixXcd J(n, n);
    const double h = 1e-7;
    for (long l = 0; l < n; ++l) {
      Eigen::VectorXcd kp = k, km = k;
      kp(l) += h;
      km(l) -= h;
      J.col(l) = (bae_polynomial_residual(N, ph, kp) - bae_polynomial_residual(N, ph, km)) / (2 * h);
    }
    Eigen::VectorXcd step = J.fullPivLu().solve(-f);
    if (!step.allFinite()) return false;
    double t = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 12; ++ls, t *= 0.5) {
      Eigen::VectorXcd kn = k + t * step;
      Eigen::VectorXcd fnv = bae_polynomial_residual(N, ph, kn);
      if (fnv.allFinite() && fnv.norm() < fn) {
        k = kn;
        f = fnv;
        moved = true;
        break;
      }
    }
    if (!moved) return f.norm() < 1e-11;
    if ((t * step).norm() < 1e-15) return f.norm() < 1e-11;
  }
  return f.norm() < 1e-11;
}

inline std::vector<Eigen::VectorXcd> seed_grid(int n) {
  std::vector<Eigen::VectorXcd> seeds;
  if (n == 1) {
    for (int a = 0; a < 40; ++a) {
      Eigen::VectorXcd s(1);
      s(0) = 0.05 + a * (3.05 / 40);
      seeds.push_back(s);
    }
  } else if (n == 2) {
    for (int a = 0; a < 14; ++a)
      for (int b = 0; b < 14; ++b)
        for (double im : {0.0, 0.3, -0.3, 1.0}) {
          Eigen::VectorXcd s(2);
          s << cplx(0.1 + a * 2.9 / 13, im), cplx(0.1 + b * 2.9 / 13, -im);
          seeds.push_back(s);
        }
  } else if (n == 3) {
    for (int a = 0; a < 8; ++a)
      for (int b = a; b < 8; ++b)
        for (int c = b; c < 8; ++c)
          for (double im : {0.0, 0.3, 1.0}) {
            Eigen::VectorXcd s(3);
            s << cplx(0.15 + a * 0.4, im), cplx(0.15 + b * 0.4, -im), cplx(0.2 + c * 0.4, 0.0);
            seeds.push_back(s);
          }
  } else {
    throw std::invalid_argument("solve_bae: magnon count must be 1..3");
  }
  return seeds;
}

}  // namespace bethe_detail

inline double hw_residual_of(const ChainSpec& spec, const CVector& v) {
  return (qgroup_generators_sparse(spec).Splus * v).norm() / v.norm();
}

// Multi-start Newton on the polynomial form of the Bethe equations.
// Kept: nontrivial, non-null, eigenvector to 1e-8, deduplicated up to permutation and k -> -k.
inline std::vector<BetheState> solve_bae(int N, int n, const QPhase& ph, BetheSolveStats* stats = nullptr,
                                         double eigen_tol = 1e-8) {
  if (n < 0 || n > N) throw std::invalid_argument("solve_bae: magnon count out of range");
  ChainSpec spec(N, ph);
  SpMatrix H = hamiltonian_sparse(spec);
  BetheSolveStats st;
  std::vector<BetheState> out;
  auto finish = [&](std::vector<cplx> k) {
    BetheState s;
    s.roots.N = N;
    s.roots.roots = k;
    s.roots.residual = bae_residual(N, ph, k);
    classify(s.roots);
    s.vector = build_bethe_vector(N, ph, k);
    const double nv = s.vector.norm();
    if (nv < 1e-8) {
      st.rejected_null++;
      return;
    }
    CVector hv = H * s.vector;
    s.energy = s.vector.dot(hv) / (nv * nv);
    s.eigen_residual = (hv - s.energy * s.vector).norm() / nv;
    if (s.eigen_residual > eigen_tol || s.roots.residual > 1e-10) {
      st.rejected_residual++;
      return;
    }
    s.hw_residual = hw_residual_of(spec, s.vector);
    out.push_back(std::move(s));
  };
  if (n == 0) {
    finish({});
    if (stats) *stats = st;
    return out;
  }
  std::vector<std::vector<cplx>> keys;
  for (Eigen::VectorXcd k : bethe_detail::seed_grid(n)) {
    st.seeds++;
    if (!bethe_detail::newton(N, ph, k)) continue;
    st.converged++;
    std::vector<cplx> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = canonical_root(k(i));
    bool trivial = false;
    for (int i = 0; i < n; ++i) {
      if (std::abs(std::sin(roots[i])) < 1e-6) trivial = true;
      for (int j = i + 1; j < n; ++j)
        if (std::abs(roots[i] - roots[j]) < 1e-6 || std::abs(canonical_root(-roots[i]) - roots[j]) < 1e-6)
          trivial = true;
    }
    if (trivial) {
      st.rejected_trivial++;
      continue;
    }
    // key: sorted (Re, |Im|)
    std::vector<cplx> key(n);
    for (int i = 0; i < n; ++i) key[i] = cplx(roots[i].real(), std::abs(roots[i].imag()));
    std::sort(key.begin(), key.end(), [](cplx a, cplx b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
    bool dup = false;
    for (const auto& kk : keys) {
      double d = 0;
      for (int i = 0; i < n; ++i) d = std::max(d, std::abs(kk[i] - key[i]));
      if (d < 1e-6) dup = true;
    }
    if (dup) {
      st.duplicates++;
      continue;
    }
    keys.push_back(key);
    finish(roots);
  }
  if (stats) *stats = st;
  return out;
}

struct PTReport {
  cplx measured;            // c in P conj(v) = c v
  double proportionality = 0;  // |P conj(v) - c v|/|v|
  cplx predicted;           // (-1)^{1+m} (-q)^{-n}
  double deviation = 0;     // |measured - predicted|
  cplx sigma;               // e^{iN sum k} prod_{j<l} s(-k_l,k_j)/s(k_j,-k_l)
  cplx corrected;
  double corrected_deviation = 0;  // |measured - sigma (-1)^{m + n(n+1)/2} q^{-n}|
  cplx prop_ratio;          // conj(A(conj k)) / ((-q)^{-n} e^{i(N+1) sum k} A(k reversed))
  double prop_residual = 0; // |prop_ratio - 1|
};

inline PTReport pt_eigenvalue_check(const BetheState& s, const QPhase& ph) {
  const int N = s.roots.N, n = s.roots.n();
  ChainSpec spec(N, ph);
  PTReport r;
  CVector w = parity_sparse(spec) * s.vector.conjugate();
  const double nv2 = s.vector.squaredNorm();
  r.measured = s.vector.dot(w) / nv2;
  r.proportionality = (w - r.measured * s.vector).norm() / std::sqrt(nv2);
  const cplx mq = -ph.q();
  r.predicted = ((1 + s.roots.m_pairs) % 2 == 0 ? 1.0 : -1.0) * std::pow(mq, -n);
  r.deviation = std::abs(r.measured - r.predicted);
  cplx sumk = 0;
  for (cplx k : s.roots.roots) sumk += k;
  r.sigma = bethe_detail::expi(double(N) * sumk);
  const auto& k = s.roots.roots;
  for (int j = 0; j < n; ++j)
    for (int l = j + 1; l < n; ++l) r.sigma *= bethe_s(ph, -k[l], k[j]) / bethe_s(ph, k[j], -k[l]);
  const double sgn = ((s.roots.m_pairs + n * (n + 1) / 2) % 2) ? -1.0 : 1.0;
  r.corrected = sgn * r.sigma * std::pow(ph.q(), -n);
  r.corrected_deviation = std::abs(r.measured - r.corrected);
  std::vector<cplx> kbar(k.size()), krev(k.rbegin(), k.rend());
  for (size_t i = 0; i < k.size(); ++i) kbar[i] = std::conj(k[i]);
  const cplx lhs = std::conj(amplitude(N, ph, kbar));
  const cplx rhs = std::pow(mq, -n) * bethe_detail::expi(double(N + 1) * sumk) * amplitude(N, ph, krev);
  r.prop_ratio = lhs / rhs;
  r.prop_residual = std::abs(r.prop_ratio - 1.0);
  return r;
}

// Highest-weight spectrum of H in the sector with n down spins.
inline std::vector<cplx> hw_spectrum(const ChainSpec& spec, int n) {
  const int N = spec.N;
  SectorMap sec = make_sector(N, N - 2 * n);
  CMatrix Hs(sector_restrict(hamiltonian_sparse(spec), sec));
  CMatrix Sp(qgroup_generators_sparse(spec).Splus);
  // columns of S^+ from this sector
  CMatrix spc(Sp.rows(), static_cast<long>(sec.indices.size()));
  for (size_t c = 0; c < sec.indices.size(); ++c) spc.col(static_cast<long>(c)) = Sp.col(sec.indices[c]);
  Eigen::JacobiSVD<CMatrix> svd(spc, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int rank = 0;
  for (long i = 0; i < sv.size(); ++i) rank += sv(i) > cut;
  CMatrix K = svd.matrixV().rightCols(spc.cols() - rank);
  std::vector<cplx> ev;
  if (K.cols() == 0) return ev;
  Eigen::ComplexEigenSolver<CMatrix> es(K.adjoint() * Hs * K);
  for (long i = 0; i < es.eigenvalues().size(); ++i) ev.push_back(es.eigenvalues()(i));
  return ev;
}

struct IdentityReport {
  double beta_conj = 0;   // conj(beta(-conj k)) = -q^{-1} e^{i(2N+1)k} beta(-k)
  double B_conj = 0;      // conj(B(-conj k1, conj k2)) = B(-k2,k1) e^{-i(k1+k2)} s(-k2,k1)/s(k1,-k2)
  double s_reflect = 0;   // s(k1,k2) = e^{i(k1+k2)} s(-k2,-k1)
  int points = 0;
};

// Relative residuals at random real momenta (e^{ik} on the unit circle).
inline IdentityReport bethe_identity_check(int N, const QPhase& ph, int points = 100, unsigned seed = 2024) {
  using bethe_detail::expi;
  IdentityReport rep;
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  auto rel = [](cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  const cplx qi = 1.0 / ph.q();
  for (int t = 0; t < points; ++t) {
    const cplx k(u(rng)), k1(u(rng)), k2(u(rng));
    rep.beta_conj = std::max(rep.beta_conj, rel(std::conj(bethe_beta(N, ph, -std::conj(k))),
                                                -qi * expi(double(2 * N + 1) * k) * bethe_beta(N, ph, -k)));
    rep.B_conj = std::max(rep.B_conj, rel(std::conj(bethe_B(ph, -std::conj(k1), std::conj(k2))),
                                          bethe_B(ph, -k2, k1) * expi(-(k1 + k2)) * bethe_s(ph, -k2, k1) / bethe_s(ph, k1, -k2)));
    rep.s_reflect = std::max(rep.s_reflect, rel(bethe_s(ph, k1, k2), expi(k1 + k2) * bethe_s(ph, -k2, -k1)));
    rep.points++;
  }
  return rep;
}

// P on the coefficient array: psi(x) -> psi(N+1-x_n, ..., N+1-x_1). T is plain conjugation.
inline double psi_transform_check(int N, const QPhase& ph, const std::vector<cplx>& k) {
  ChainSpec spec(N, ph);
  CVector v = build_bethe_vector(N, ph, k);
  CVector pv = parity_sparse(spec) * v;
  double worst = 0;
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  for (long idx = 0; idx < v.size(); ++idx) {
    if (popcount_down(idx) != static_cast<int>(k.size())) continue;
    std::vector<int> x;
    for (int s = 1; s <= N; ++s)
      if (site_bit(idx, N, s)) x.push_back(s);
    std::vector<int> y;
    for (auto it = x.rbegin(); it != x.rend(); ++it) y.push_back(N + 1 - *it);
    worst = std::max(worst, std::abs(pv(idx) - bethe_psi(N, ph, k, y)) / scale);
  }
  return worst;
}

struct EnergyFit {
  double slope = 0, intercept = 0;  // lambda = slope * sum(cos k - Delta_+) + intercept
  double max_dev = 0;
  int points = 0;
};

inline EnergyFit fit_energy(const std::vector<BetheState>& states, const QPhase& ph) {
  EnergyFit f;
  const double dp = ph.loop() / 2;
  std::vector<double> xs, ys;
  for (const auto& s : states) {
    cplx x = 0;
    for (cplx k : s.roots.roots) x += std::cos(k) - dp;
    xs.push_back(x.real());
    ys.push_back(s.energy.real());
  }
  f.points = static_cast<int>(xs.size());
  if (f.points < 2) return f;
  Eigen::MatrixXd A(f.points, 2);
  Eigen::VectorXd y(f.points);
  for (int i = 0; i < f.points; ++i) {
    A(i, 0) = xs[i];
    A(i, 1) = 1.0;
    y(i) = ys[i];
  }
  Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
  f.slope = c(0);
  f.intercept = c(1);
  f.max_dev = (A * c - y).cwiseAbs().maxCoeff();
  return f;
}

// sum_j (2 cos k_j - (q + q^{-1}))
inline cplx bethe_energy(const std::vector<cplx>& k, const QPhase& ph) {
  cplx e = 0;
  for (cplx kj : k) e += 2.0 * std::cos(kj) - ph.loop();
  return e;
}

// the printed normalization (N-1) Delta_+ + 4 sum(cos k - Delta_+)
inline cplx bethe_energy_printed(int N, const std::vector<cplx>& k, const QPhase& ph) {
  const double dp = ph.loop() / 2;
  cplx e = double(N - 1) * dp;
  for (cplx kj : k) e += 4.0 * (std::cos(kj) - dp);
  return e;
}

inline nlohmann::json to_json(const BetheState& s, const PTReport& pt, const QPhase& ph, double tol) {
  nlohmann::json roots = nlohmann::json::array();
  for (cplx k : s.roots.roots) roots.push_back({k.real(), k.imag()});
  return {{"N", s.roots.N},
          {"n", s.roots.n()},
          {"r", ph.r()},
          {"roots", roots},
          {"m_pairs", s.roots.m_pairs},
          {"energy", {s.energy.real(), s.energy.imag()}},
          {"eigen_residual", s.eigen_residual},
          {"hw_residual", s.hw_residual},
          {"pt_factor_measured", {pt.measured.real(), pt.measured.imag()}},
          {"pt_factor_predicted", {pt.predicted.real(), pt.predicted.imag()}},
          {"pt_sigma", {pt.sigma.real(), pt.sigma.imag()}},
          {"tolerance", tol},
          {"version", kVersion}};
}

}  // namespace qxxz
