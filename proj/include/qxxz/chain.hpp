#pragma once
// Operators on (C^2)^{\otimes N}: TL and Hecke generators, H, the braid beta,
// U_q(sl2) generators for both coproducts, and P, R, T.

#include <array>
#include <vector>

#include "linops.hpp"

namespace qxxz {

struct ChainSpec {
  int N;
  QPhase phase;

  ChainSpec(int n, QPhase ph) : N(n), phase(ph) {
    if (N < 1) throw std::invalid_argument("ChainSpec: N must be positive");
    if (N > 24) throw std::length_error("ChainSpec: N too large");
  }
  long dim() const { return 1L << N; }
};

// bit of site s (1-based), 0 = up
inline int site_bit(long idx, int N, int s) { return static_cast<int>((idx >> (N - s)) & 1L); }
inline long flip_site(long idx, int N, int s) { return idx ^ (1L << (N - s)); }

using Block4 = Eigen::Matrix4cd;

inline Block4 tl_block(const QPhase& ph) {
  const cplx q = ph.q(), qi = 1.0 / q;
  Block4 b = Block4::Zero();
  b(1, 1) = -qi;
  b(1, 2) = 1.0;
  b(2, 1) = 1.0;
  b(2, 2) = -q;
  return b;
}

// Block acting on sites (i, i+1), identity elsewhere.
inline SpMatrix two_site_operator(int N, int i, const Block4& blk) {
  if (i < 1 || i > N - 1) throw std::out_of_range("two_site_operator: site index out of range");
  const long d = 1L << N;
  const int shift = N - i - 1;
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(2 * d);
  for (long col = 0; col < d; ++col) {
    int c = static_cast<int>((col >> shift) & 3L);
    long base = col & ~(3L << shift);
    for (int r = 0; r < 4; ++r) {
      cplx v = blk(r, c);
      if (v != cplx(0)) trips.emplace_back(base | (static_cast<long>(r) << shift), col, v);
    }
  }
  SpMatrix m(d, d);
  m.setFromTriplets(trips.begin(), trips.end());
  return m;
}

inline SpMatrix tl_generator_sparse(const ChainSpec& s, int i) { return two_site_operator(s.N, i, tl_block(s.phase)); }

inline SpMatrix hecke_generator_sparse(const ChainSpec& s, int i, bool inverse = false) {
  Block4 b = tl_block(s.phase);
  b += (inverse ? s.phase.q() : 1.0 / s.phase.q()) * Block4::Identity();
  return two_site_operator(s.N, i, b);
}

inline SpMatrix hamiltonian_sparse(const ChainSpec& s) {
  SpMatrix h(s.dim(), s.dim());
  for (int i = 1; i < s.N; ++i) h += tl_generator_sparse(s, i);
  return h;
}

inline CMatrix build_tl_generator(const ChainSpec& s, int i) {
  check_dim(s.dim(), "build_tl_generator");
  return CMatrix(tl_generator_sparse(s, i));
}

inline CMatrix build_hecke_generator(const ChainSpec& s, int i, bool inverse = false) {
  check_dim(s.dim(), "build_hecke_generator");
  return CMatrix(hecke_generator_sparse(s, i, inverse));
}

inline CMatrix build_hamiltonian(const ChainSpec& s) {
  check_dim(s.dim(), "build_hamiltonian");
  return CMatrix(hamiltonian_sparse(s));
}

// Pauli-sum form of H, assembled by Kronecker products. Cross-check only.
inline CMatrix build_hamiltonian_pauli(const ChainSpec& s) {
  check_dim(s.dim(), "build_hamiltonian_pauli");
  CMatrix I2 = CMatrix::Identity(2, 2), sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, cplx(0, -1), cplx(0, 1), 0;
  sz << 1, 0, 0, -1;
  auto at = [&](const CMatrix& op, int site) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (int k = 1; k <= s.N; ++k) out = kron(out, k == site ? op : I2);
    return out;
  };
  const cplx q = s.phase.q();
  const cplx dp = (q + 1.0 / q) / 2.0, dm = (q - 1.0 / q) / 2.0;
  const long d = s.dim();
  CMatrix h = CMatrix::Zero(d, d);
  for (int i = 1; i < s.N; ++i)
    h += 0.5 * (at(sx, i) * at(sx, i + 1) + at(sy, i) * at(sy, i + 1) +
                dp * (at(sz, i) * at(sz, i + 1) - CMatrix::Identity(d, d)));
  h += dm * (at(sz, 1) - at(sz, s.N)) / 2.0;
  return h;
}

// Word in Hecke generators applied to the columns of m, rightmost letter first.
// Letter +i means B_i, -i means B_i^{-1}.
inline CMatrix apply_hecke_word(const ChainSpec& s, const std::vector<int>& word, CMatrix m) {
  std::vector<SpMatrix> fwd(s.N), inv(s.N);
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int i = std::abs(*it);
    auto& cache = *it > 0 ? fwd : inv;
    if (cache[i].size() == 0) cache[i] = hecke_generator_sparse(s, i, *it < 0);
    m = cache[i] * m;
  }
  return m;
}

// beta = beta_1 ... beta_{N-1}, beta_n = b_n b_{n-1} ... b_1
inline std::vector<int> beta_word(int N) {
  std::vector<int> w;
  for (int n = 1; n <= N - 1; ++n)
    for (int i = n; i >= 1; --i) w.push_back(i);
  return w;
}

inline std::vector<int> inverse_word(const std::vector<int>& w) {
  std::vector<int> out(w.rbegin(), w.rend());
  for (int& x : out) x = -x;
  return out;
}

inline CMatrix build_braid_beta(const ChainSpec& s, bool inverse = false) {
  check_dim(s.dim(), "build_braid_beta");
  auto w = beta_word(s.N);
  if (inverse) w = inverse_word(w);
  return apply_hecke_word(s, w, CMatrix::Identity(s.dim(), s.dim()));
}

struct QGroupGenerators {
  SpMatrix Splus, Sminus, qSz, Splus_op, Sminus_op;
};

inline QGroupGenerators qgroup_generators_sparse(const ChainSpec& s) {
  const int N = s.N;
  const long d = s.dim();
  std::vector<Eigen::Triplet<cplx>> tp, tm, tpo, tmo, tq;
  for (long col = 0; col < d; ++col) {
    // spin-half weights per site
    std::vector<double> w(N + 1);
    double sz = 0;
    for (int k = 1; k <= N; ++k) {
      w[k] = site_bit(col, N, k) ? -0.5 : 0.5;
      sz += w[k];
    }
    tq.emplace_back(col, col, s.phase.pow(sz));
    double left = 0, right = sz;
    for (int i = 1; i <= N; ++i) {
      right -= w[i];
      cplx c = s.phase.pow(left - right), cop = s.phase.pow(right - left);
      long row = flip_site(col, N, i);
      if (site_bit(col, N, i)) {
        tp.emplace_back(row, col, c);
        tpo.emplace_back(row, col, cop);
      } else {
        tm.emplace_back(row, col, c);
        tmo.emplace_back(row, col, cop);
      }
      left += w[i];
    }
  }
  auto mk = [d](auto& t) {
    SpMatrix m(d, d);
    m.setFromTriplets(t.begin(), t.end());
    return m;
  };
  return {mk(tp), mk(tm), mk(tq), mk(tpo), mk(tmo)};
}

struct QGroupDense {
  CMatrix Splus, Sminus, qSz, Splus_op, Sminus_op;
};

inline QGroupDense build_qgroup_generators(const ChainSpec& s) {
  check_dim(s.dim(), "build_qgroup_generators");
  auto g = qgroup_generators_sparse(s);
  return {CMatrix(g.Splus), CMatrix(g.Sminus), CMatrix(g.qSz), CMatrix(g.Splus_op), CMatrix(g.Sminus_op)};
}

inline SpMatrix sz_sparse(const ChainSpec& s) {
  SpMatrix m(s.dim(), s.dim());
  std::vector<Eigen::Triplet<cplx>> t;
  for (long i = 0; i < s.dim(); ++i) t.emplace_back(i, i, 0.5 * two_sz_of(i, s.N));
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

inline long reverse_sites(long idx, int N) {
  long out = 0;
  for (int k = 0; k < N; ++k)
    if (idx >> k & 1L) out |= 1L << (N - 1 - k);
  return out;
}

inline SpMatrix parity_sparse(const ChainSpec& s) {
  SpMatrix m(s.dim(), s.dim());
  std::vector<Eigen::Triplet<cplx>> t;
  for (long i = 0; i < s.dim(); ++i) t.emplace_back(reverse_sites(i, s.N), i, 1.0);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

inline SpMatrix spin_reversal_sparse(const ChainSpec& s) {
  SpMatrix m(s.dim(), s.dim());
  std::vector<Eigen::Triplet<cplx>> t;
  const long all = s.dim() - 1;
  for (long i = 0; i < s.dim(); ++i) t.emplace_back(i ^ all, i, 1.0);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

struct DiscreteOps {
  CMatrix P, R;
};

inline DiscreteOps build_discrete_ops(const ChainSpec& s) {
  check_dim(s.dim(), "build_discrete_ops");
  return {CMatrix(parity_sparse(s)), CMatrix(spin_reversal_sparse(s))};
}

// Adjoint action of T: entrywise conjugation in the spin basis.
template <class M>
inline auto t_conjugate(const M& a) {
  return a.conjugate().eval();
}

}  // namespace qxxz
