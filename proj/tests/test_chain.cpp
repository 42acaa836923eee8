#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "qxxz/chain.hpp"

using namespace qxxz;

namespace {
double nrm(const CMatrix& a) { return op_norm_inf(a); }
CMatrix eye(long d) { return CMatrix::Identity(d, d); }
}  // namespace

TEST(Chain, SpecValidation) {
  EXPECT_THROW(ChainSpec(0, QPhase(5)), std::invalid_argument);
  EXPECT_EQ(ChainSpec(6, QPhase(5)).dim(), 64);
}

TEST(Hamiltonian, TwoSitesIsTheBlock) {
  QPhase ph(5);
  const cplx q = ph.q();
  CMatrix h = build_hamiltonian(ChainSpec(2, ph));
  CMatrix e = CMatrix::Zero(4, 4);
  e(1, 1) = -1.0 / q;
  e(1, 2) = 1;
  e(2, 1) = 1;
  e(2, 2) = -q;
  EXPECT_LT(nrm(h - e), 1e-15);
  EXPECT_LT(nrm(build_tl_generator(ChainSpec(2, ph), 1) - e), 1e-15);
}

TEST(Hamiltonian, AllUpIsAnnihilated) {
  for (int N = 2; N <= 7; ++N) {
    CMatrix h = build_hamiltonian(ChainSpec(N, QPhase(4)));
    EXPECT_LT(h.col(0).cwiseAbs().maxCoeff(), 1e-15);
  }
}

TEST(Hamiltonian, PauliFormAgrees) {
  for (double r : {3.0, 5.0, 6.5})
    for (int N = 2; N <= 6; ++N) {
      ChainSpec s(N, QPhase(r));
      EXPECT_LT(nrm(build_hamiltonian(s) - build_hamiltonian_pauli(s)), 1e-13) << N << " " << r;
    }
}

TEST(Hamiltonian, SymmetricNotHermitian) {
  ChainSpec s(4, QPhase(5));
  CMatrix h = build_hamiltonian(s);
  EXPECT_LT(nrm(h - h.transpose()), 1e-15);
  EXPECT_GT(nrm(h - h.adjoint()), 0.1);
}

TEST(Hamiltonian, SpectrumIsUnionOfSectors) {
  ChainSpec s(3, QPhase(5));
  CMatrix h = build_hamiltonian(s);
  Eigen::ComplexEigenSolver<CMatrix> full(h, false);
  std::vector<cplx> parts;
  for (int m = -3; m <= 3; m += 2) {
    Eigen::ComplexEigenSolver<CMatrix> es(sector_restrict(h, make_sector(3, m)), false);
    for (long i = 0; i < es.eigenvalues().size(); ++i) parts.push_back(es.eigenvalues()(i));
  }
  ASSERT_EQ(static_cast<long>(parts.size()), full.eigenvalues().size());
  for (long i = 0; i < full.eigenvalues().size(); ++i) {
    double best = 1e9;
    for (cplx p : parts) best = std::min(best, std::abs(p - full.eigenvalues()(i)));
    EXPECT_LT(best, 1e-10);
  }
}

TEST(TemperleyLieb, Relations) {
  for (double r : {3.0, 4.0, 5.0, 7.5}) {
    QPhase ph(r);
    const int N = 5;
    ChainSpec s(N, ph);
    std::vector<CMatrix> E;
    for (int i = 1; i < N; ++i) E.push_back(build_tl_generator(s, i));
    for (int i = 0; i < N - 1; ++i) {
      EXPECT_LT(nrm(E[i] * E[i] + ph.loop() * E[i]), 1e-13);
      if (i + 1 < N - 1) {
        EXPECT_LT(nrm(E[i] * E[i + 1] * E[i] - E[i]), 1e-13);
        EXPECT_LT(nrm(E[i + 1] * E[i] * E[i + 1] - E[i + 1]), 1e-13);
      }
      for (int j = i + 2; j < N - 1; ++j) EXPECT_LT(nrm(E[i] * E[j] - E[j] * E[i]), 1e-15);
    }
  }
}

TEST(Hecke, TwoSiteMatrix) {
  QPhase ph(5);
  const cplx q = ph.q(), qi = 1.0 / q;
  CMatrix b = build_hecke_generator(ChainSpec(2, ph), 1);
  CMatrix e(4, 4);
  e << qi, 0, 0, 0, 0, 0, 1, 0, 0, 1, qi - q, 0, 0, 0, 0, qi;
  EXPECT_LT(nrm(b - e), 1e-15);
}

TEST(Hecke, InverseBraidAndQuadratic) {
  QPhase ph(5);
  const cplx q = ph.q();
  ChainSpec s(4, ph);
  std::vector<CMatrix> B, Bi;
  for (int i = 1; i < 4; ++i) {
    B.push_back(build_hecke_generator(s, i));
    Bi.push_back(build_hecke_generator(s, i, true));
  }
  for (int i = 0; i < 3; ++i) {
    EXPECT_LT(nrm(B[i] * Bi[i] - eye(16)), 1e-14);
    // (B - q^{-1})(B + q) = 0
    EXPECT_LT(nrm((B[i] - (1.0 / q) * eye(16)) * (B[i] + q * eye(16))), 1e-14);
  }
  EXPECT_LT(nrm(B[0] * B[1] * B[0] - B[1] * B[0] * B[1]), 1e-14);
  EXPECT_LT(nrm(B[1] * B[2] * B[1] - B[2] * B[1] * B[2]), 1e-14);
  EXPECT_LT(nrm(B[0] * B[2] - B[2] * B[0]), 1e-15);
}

TEST(Braid, BetaWords) {
  QPhase ph(5);
  EXPECT_EQ(beta_word(2), std::vector<int>({1}));
  EXPECT_EQ(beta_word(3), std::vector<int>({1, 2, 1}));
  EXPECT_EQ(inverse_word({1, 2, 1}), std::vector<int>({-1, -2, -1}));
  ChainSpec s2(2, ph), s3(3, ph);
  EXPECT_LT(nrm(build_braid_beta(s2) - build_hecke_generator(s2, 1)), 1e-15);
  CMatrix b = build_braid_beta(s3), B1 = build_hecke_generator(s3, 1), B2 = build_hecke_generator(s3, 2);
  EXPECT_LT(nrm(b - B1 * B2 * B1), 1e-14);
  EXPECT_LT(nrm(B1 * b - b * B2), 1e-14);
  EXPECT_LT(nrm(build_braid_beta(s3, true) * b - eye(8)), 1e-13);
}

TEST(Braid, BetaReversesGenerators) {
  // beta b_i beta^{-1} = b_{N-i}
  for (int N : {4, 5}) {
    ChainSpec s(N, QPhase(7));
    CMatrix b = build_braid_beta(s), bi = build_braid_beta(s, true);
    for (int i = 1; i < N; ++i)
      EXPECT_LT(nrm(b * build_hecke_generator(s, i) * bi - build_hecke_generator(s, N - i)), 1e-12);
  }
}

TEST(QuantumGroup, SingleSiteAndTwoSites) {
  QPhase ph(5);
  auto g1 = build_qgroup_generators(ChainSpec(1, ph));
  CMatrix sp = CMatrix::Zero(2, 2), sm = CMatrix::Zero(2, 2);
  sp(0, 1) = 1;
  sm(1, 0) = 1;
  EXPECT_LT(nrm(g1.Splus - sp), 1e-15);
  EXPECT_LT(nrm(g1.Sminus - sm), 1e-15);
  auto g2 = build_qgroup_generators(ChainSpec(2, ph));
  CMatrix qz = CMatrix::Zero(2, 2), qzi = CMatrix::Zero(2, 2);
  qz.diagonal() << ph.pow(0.5), ph.pow(-0.5);
  qzi.diagonal() << ph.pow(-0.5), ph.pow(0.5);
  CMatrix expect = kron(qz, sp) + kron(sp, qzi);
  EXPECT_LT(nrm(g2.Splus - expect), 1e-15);
  EXPECT_LT(nrm(g2.Splus_op - (kron(qzi, sp) + kron(sp, qz))), 1e-15);
}

TEST(QuantumGroup, CommutatorAndCommutesWithH) {
  for (double r : {3.0, 5.0, 6.5}) {
    QPhase ph(r);
    const int N = 4;
    ChainSpec s(N, ph);
    auto g = build_qgroup_generators(s);
    CMatrix sz(sz_sparse(s));
    // [S^+, S^-] = [2 S^z]_q, diagonal
    CMatrix lhs = g.Splus * g.Sminus - g.Sminus * g.Splus;
    CMatrix rhs = CMatrix::Zero(16, 16);
    for (long i = 0; i < 16; ++i) rhs(i, i) = q_int(ph, 2 * sz(i, i).real());
    EXPECT_LT(nrm(lhs - rhs), 1e-12);
    CMatrix h = build_hamiltonian(s);
    EXPECT_LT(nrm(h * g.Splus - g.Splus * h), 1e-13);
    EXPECT_LT(nrm(h * g.Sminus - g.Sminus * h), 1e-13);
    EXPECT_LT(nrm(h * sz - sz * h), 1e-15);
    for (int i = 1; i < N; ++i) {
      CMatrix e = build_tl_generator(s, i);
      EXPECT_LT(nrm(e * g.Splus - g.Splus * e), 1e-13);
      // opposite coproduct commutes with E^*
      EXPECT_LT(nrm(e.adjoint() * g.Splus_op - g.Splus_op * e.adjoint()), 1e-13);
    }
  }
}

TEST(SchurWeyl, CommutantDimension) {
  // dimension of {X : X E_i = E_i X for all i} equals sum_j dim Gamma_j^2 at generic q
  for (int N = 2; N <= 4; ++N) {
    ChainSpec s(N, QPhase(N + 3.5));
    const long d = s.dim();
    std::vector<CMatrix> E;
    for (int i = 1; i < N; ++i) E.push_back(build_tl_generator(s, i));
    CMatrix L = CMatrix::Zero((N - 1) * d * d, d * d);
    for (int i = 0; i < N - 1; ++i)
      L.block(i * d * d, 0, d * d, d * d) = kron(eye(d), E[i]) - kron(E[i].transpose(), eye(d));
    const int dim = static_cast<int>(d * d) - numeric_rank(L, 1e-10);
    std::int64_t expect = 0;
    for (int tj = N % 2; tj <= N; tj += 2) expect += (tj + 1) * (tj + 1);
    EXPECT_EQ(dim, expect) << N;
  }
}

TEST(Discrete, ParityAndReversal) {
  QPhase ph(5);
  auto d2 = build_discrete_ops(ChainSpec(2, ph));
  // |up,down> is index 1, |down,up> index 2
  EXPECT_EQ(d2.P(2, 1), cplx(1));
  EXPECT_EQ(d2.R(3, 0), cplx(1));
  ChainSpec s(4, ph);
  auto d = build_discrete_ops(s);
  CMatrix h = build_hamiltonian(s);
  EXPECT_LT(nrm(d.P * h * d.P - h.conjugate()), 1e-12);
  EXPECT_LT(nrm(d.R * h * d.R - h.conjugate()), 1e-12);
  EXPECT_LT(nrm(d.P * d.P - eye(16)), 1e-15);
  EXPECT_LT(nrm(d.R * d.R - eye(16)), 1e-15);
  auto g = build_qgroup_generators(s);
  CMatrix sz(sz_sparse(s));
  EXPECT_LT(nrm(d.R * sz * d.R + sz), 1e-15);
  EXPECT_LT(nrm(d.R * g.Splus * d.R - g.Sminus_op), 1e-13);
  EXPECT_LT(nrm(d.P * g.Splus * d.P - g.Splus_op), 1e-13);
  for (int k = 1; k < 4; ++k) {
    CMatrix e = build_tl_generator(s, k);
    EXPECT_LT(nrm(d.P * e * d.P - build_tl_generator(s, 4 - k).conjugate()), 1e-13);
    EXPECT_LT(nrm(d.R * e * d.R - e.conjugate()), 1e-13);
  }
}

TEST(Discrete, TConjugate) {
  ChainSpec s(4, QPhase(5));
  CMatrix h = build_hamiltonian(s);
  EXPECT_LT(nrm(t_conjugate(h) - h.adjoint()), 1e-15);
  EXPECT_EQ(t_conjugate(eye(4)), eye(4));
  auto d = build_discrete_ops(s);
  CMatrix e = build_tl_generator(s, 2);
  EXPECT_LT(nrm(t_conjugate(e) - e.adjoint()), 1e-15);
  EXPECT_LT(nrm(t_conjugate(e) - d.R * e * d.R), 1e-13);
  // PT invariance of H
  EXPECT_LT(nrm((d.P * h * d.P).conjugate() - h), 1e-12);
}
