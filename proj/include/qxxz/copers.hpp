#pragma once
// C = P eta and C' = R eta on the restricted span.

#include "metric.hpp"

namespace qxxz {

// Both operators are kept factored: C = P conj(Psi) Psi^T, C' = R conj(Psi) Psi^T.
struct COperatorPair {
  const SpanContext* ctx;
  CMatrix K;    // Psi^T P conj(Psi)
  CMatrix Kp;   // Psi^T R conj(Psi)
  CMatrix GT;   // Psi^T Psi

  explicit COperatorPair(const SpanContext& c) : ctx(&c) {
    const CMatrix& psi = c.basis.psi;
    CMatrix cpsi = psi.conjugate();
    K = psi.transpose() * (c.P * cpsi);
    Kp = psi.transpose() * (c.R * cpsi);
    GT = psi.transpose() * psi;
  }

  CMatrix dense_C() const { return CMatrix(ctx->P) * build_eta(ctx->basis); }
  CMatrix dense_Cprime() const { return CMatrix(ctx->R) * build_eta(ctx->basis); }

  // Psi^T (C X) Psi and Psi^T (X C) Psi
  CMatrix C_then(const SpMatrix& X) const { return K * ctx->reduce(X); }
  CMatrix then_C(const SpMatrix& X) const {
    const CMatrix& psi = ctx->basis.psi;
    return (psi.transpose() * (X * (ctx->P * psi.conjugate()))) * GT;
  }
  CMatrix Cp_then(const SpMatrix& X) const { return Kp * ctx->reduce(X); }
  CMatrix then_Cp(const SpMatrix& X) const {
    const CMatrix& psi = ctx->basis.psi;
    return (psi.transpose() * (X * (ctx->R * psi.conjugate()))) * GT;
  }
};

struct CCReport {
  double C2 = 0, Cp2 = 0, CCp = 0;
  double PetaP = 0, RetaR = 0;
};

inline CCReport cc_commute_check(const COperatorPair& c) {
  CCReport r;
  r.C2 = op_norm_inf(c.K * c.K * c.GT - c.GT);
  r.Cp2 = op_norm_inf(c.Kp * c.Kp * c.GT - c.GT);
  r.CCp = op_norm_inf((c.K * c.Kp - c.Kp * c.K) * c.GT);
  // P eta P eta and R eta R eta, spelled out from the factors
  const CMatrix& psi = c.ctx->basis.psi;
  CMatrix cpsi = psi.conjugate();
  CMatrix etaPsi = cpsi * c.GT;
  CMatrix PetaP_eta = c.ctx->P * (cpsi * (psi.transpose() * (c.ctx->P * etaPsi)));
  CMatrix RetaR_eta = c.ctx->R * (cpsi * (psi.transpose() * (c.ctx->R * etaPsi)));
  r.PetaP = op_norm_inf(psi.transpose() * PetaP_eta - c.GT);
  r.RetaR = op_norm_inf(psi.transpose() * RetaR_eta - c.GT);
  return r;
}

// The nine relations of the eta / C / C' table.
struct Table4Report {
  double eta_H = 0, eta_E = 0, eta_S = 0;
  double C_H = 0, C_E = 0, C_S = 0;
  double Cp_H = 0, Cp_E = 0, Cp_S = 0;
  double max() const { return std::max({eta_H, eta_E, eta_S, C_H, C_E, C_S, Cp_H, Cp_E, Cp_S}); }
};

inline Table4Report table4_check(const COperatorPair& c) {
  const SpanContext& x = *c.ctx;
  const int N = x.spec.N;
  Table4Report t;
  t.eta_H = x.eta_relation(x.H, SpMatrix(x.H.adjoint()));
  for (const auto& e : x.E) t.eta_E = std::max(t.eta_E, x.eta_relation(e, SpMatrix(e.adjoint())));
  t.eta_S = std::max(x.eta_relation(x.S.Splus, x.S.Splus_op), x.eta_relation(x.S.Sminus, x.S.Sminus_op));
  t.C_H = op_norm_inf(c.C_then(x.H) - c.then_C(x.H));
  for (int k = 1; k < N; ++k) t.C_E = std::max(t.C_E, op_norm_inf(c.C_then(x.E[k - 1]) - c.then_C(x.E[N - k - 1])));
  for (const SpMatrix* s : {&x.S.Splus, &x.S.Sminus, &x.Sz}) t.C_S = std::max(t.C_S, op_norm_inf(c.C_then(*s) - c.then_C(*s)));
  t.Cp_H = op_norm_inf(c.Cp_then(x.H) - c.then_Cp(x.H));
  for (const auto& e : x.E) t.Cp_E = std::max(t.Cp_E, op_norm_inf(c.Cp_then(e) - c.then_Cp(e)));
  t.Cp_S = std::max({op_norm_inf(c.Cp_then(x.S.Splus) - c.then_Cp(x.S.Sminus)),
                     op_norm_inf(c.Cp_then(x.S.Sminus) - c.then_Cp(x.S.Splus)),
                     op_norm_inf(c.Cp_then(x.Sz) + c.then_Cp(x.Sz))});
  return t;
}

struct FullSpaceCReport {
  double C2 = 0, Cp2 = 0, CCp = 0;
  Table4Report table4;
  double min_eig = 0;  // eta itself on the whole space
};

// Dense eta, C = P eta, C' = R eta on all of (C^2)^N; meaningful when the span is the full space.
inline FullSpaceCReport full_space_c_check(const SpanContext& x) {
  if (!x.full_space()) throw std::domain_error("full_space_c_check: path span is not the full space");
  FullSpaceCReport rep;
  const long d = x.spec.dim();
  const int N = x.spec.N;
  CMatrix eta = build_eta(x.basis);
  CMatrix P(x.P), R(x.R);
  CMatrix C = P * eta, Cp = R * eta;
  CMatrix I = CMatrix::Identity(d, d);
  rep.C2 = op_norm_inf(C * C - I);
  rep.Cp2 = op_norm_inf(Cp * Cp - I);
  rep.CCp = op_norm_inf(C * Cp - Cp * C);
  rep.min_eig = hermitian_eig(0.5 * (eta + eta.adjoint())).values(0);
  auto rel = [](const CMatrix& A, const SpMatrix& X, const SpMatrix& L) { return op_norm_inf(A * X - CMatrix(L * A)); };
  Table4Report& t = rep.table4;
  t.eta_H = rel(eta, x.H, SpMatrix(x.H.adjoint()));
  for (const auto& e : x.E) t.eta_E = std::max(t.eta_E, rel(eta, e, SpMatrix(e.adjoint())));
  t.eta_S = std::max(rel(eta, x.S.Splus, x.S.Splus_op), rel(eta, x.S.Sminus, x.S.Sminus_op));
  t.C_H = rel(C, x.H, x.H);
  for (int k = 1; k < N; ++k) t.C_E = std::max(t.C_E, rel(C, x.E[N - k - 1], x.E[k - 1]));
  for (const SpMatrix* s : {&x.S.Splus, &x.S.Sminus, &x.Sz}) t.C_S = std::max(t.C_S, rel(C, *s, *s));
  t.Cp_H = rel(Cp, x.H, x.H);
  for (const auto& e : x.E) t.Cp_E = std::max(t.Cp_E, rel(Cp, e, e));
  t.Cp_S = std::max({rel(Cp, x.S.Sminus, x.S.Splus), rel(Cp, x.S.Splus, x.S.Sminus), rel(Cp, x.Sz, SpMatrix(-x.Sz))});
  return rep;
}

inline int sign_pow(int e) { return (e % 2 == 0) ? 1 : -1; }

struct CprimeActionReport {
  double path_action = 0;   // C'|j,m> vs (-1)^{N/2-j}|j,-m>
  double qgroup_form = 0;   // the same action through powers of S^{+-}
  int states = 0;
};

inline CprimeActionReport cprime_path_action_check(const SpanContext& x) {
  CprimeActionReport rep;
  const auto& b = x.basis;
  const int N = x.spec.N;
  const CMatrix& psi = b.psi;
  CMatrix images = x.R * (psi.conjugate() * (psi.transpose() * psi));
  for (long c = 0; c < b.size(); ++c) {
    const auto& L = b.labels[c];
    const int two_j = b.family.paths[L.path].endpoint2();
    const int sgn = sign_pow((N - two_j) / 2);
    const int tgt = b.column_of(L.path, -L.two_m);
    rep.path_action = std::max(rep.path_action, (images.col(c) - double(sgn) * psi.col(tgt)).cwiseAbs().maxCoeff());
    // (-)^{N/2-j} [j-|m|]!/[j+|m|]! (S^{-+})^{2|m|} on weight +-|m|
    const int am = std::abs(L.two_m);
    const double f = q_factorial(x.spec.phase, (two_j - am) / 2) / q_factorial(x.spec.phase, (two_j + am) / 2);
    CVector v = psi.col(c);
    for (int k = 0; k < am; ++k) v = (L.two_m > 0 ? x.S.Sminus : x.S.Splus) * v;
    v *= f * sgn;
    rep.qgroup_form = std::max(rep.qgroup_form, (v - double(sgn) * psi.col(tgt)).cwiseAbs().maxCoeff());
    rep.states++;
  }
  return rep;
}

// y in beta^2 = q^{-y} on Gamma_j, spins doubled.
inline int beta2_exponent(int N, int two_j) {
  // N(N-4)/2 + 2j(j+1) = N(N-4)/2 + two_j (two_j + 2)/2
  return (N * (N - 4) + two_j * (two_j + 2)) / 2;
}

inline double chi_exponent(int N, int two_j) { return beta2_exponent(N, two_j) / 2.0; }

struct BraidBlock {
  int two_j = 0;
  int dim = 0;               // number of paths in the block
  cplx chi_expected, chi_measured;
  double chi_block_residual = 0;  // max |Psi_j^T C B^{-1} Psi_j - chi I|
  bool sign_flip = false;
  int beta2_exponent = 0;
  cplx beta2_measured;
  double beta2_rel_error = 0;
  double beta2_block_residual = 0;
  double consistency = 0;    // |chi^2 q^{-y} - 1|
};

struct BraidReport {
  std::vector<BraidBlock> blocks;
  double max_chi_residual() const {
    double m = 0;
    for (auto& b : blocks) m = std::max({m, b.chi_block_residual, std::abs(b.chi_measured - b.chi_expected)});
    return m;
  }
  double max_beta2_error() const {
    double m = 0;
    for (auto& b : blocks) m = std::max(m, b.beta2_rel_error);
    return m;
  }
};

inline BraidReport braid_identity_check(const SpanContext& x, bool with_chi = true) {
  BraidReport rep;
  const auto& b = x.basis;
  const int N = x.spec.N;
  const QPhase& ph = x.spec.phase;
  const CMatrix& psi = b.psi;
  auto w = beta_word(N);
  auto winv = inverse_word(w);
  std::vector<int> w2 = w;
  w2.insert(w2.end(), w.begin(), w.end());
  std::vector<int> ends;
  for (const auto& p : b.family.paths)
    if (std::find(ends.begin(), ends.end(), p.endpoint2()) == ends.end()) ends.push_back(p.endpoint2());
  std::sort(ends.begin(), ends.end());
  for (int two_j : ends) {
    BraidBlock blk;
    blk.two_j = two_j;
    std::vector<int> cols = b.columns_with_endpoint(two_j);
    for (const auto& p : b.family.paths) blk.dim += p.endpoint2() == two_j;
    CMatrix psij(psi.rows(), static_cast<long>(cols.size()));
    for (size_t i = 0; i < cols.size(); ++i) psij.col(static_cast<long>(i)) = psi.col(cols[i]);
    const long nj = psij.cols();
    const CMatrix Ij = CMatrix::Identity(nj, nj);
    // designated vector: zigzag path at m = j
    int zz = -1;
    BratteliPath z = zigzag_path(N, two_j);
    for (size_t i = 0; i < cols.size(); ++i) {
      const auto& L = b.labels[cols[i]];
      if (b.family.paths[L.path] == z && L.two_m == two_j) zz = static_cast<int>(i);
    }
    if (zz < 0) throw std::logic_error("braid_identity_check: zigzag path missing from family");

    blk.beta2_exponent = beta2_exponent(N, two_j);
    const cplx b2_expected = ph.pow(-blk.beta2_exponent);
    CMatrix b2 = psij.transpose() * apply_hecke_word(x.spec, w2, psij);
    blk.beta2_measured = b2(zz, zz);
    blk.beta2_rel_error = std::abs(blk.beta2_measured - b2_expected) / std::abs(b2_expected);
    blk.beta2_block_residual = op_norm_inf(b2 - b2_expected * Ij);

    blk.chi_expected = ph.pow(chi_exponent(N, two_j));
    if (with_chi) {
      CMatrix cb = (psij.transpose() * (x.P * psi.conjugate())) * (psi.transpose() * apply_hecke_word(x.spec, winv, psij));
      blk.chi_measured = cb(zz, zz);
      blk.chi_block_residual = op_norm_inf(cb - blk.chi_expected * Ij);
      blk.sign_flip = std::abs(blk.chi_measured + blk.chi_expected) < 1e-6;
      blk.consistency = std::abs(blk.chi_measured * blk.chi_measured * b2_expected - 1.0);
    }
    rep.blocks.push_back(blk);
  }
  return rep;
}

// beta^2 on the designated vector of one block, without building the whole family.
inline cplx beta2_scalar(const ChainSpec& spec, int two_j) {
  BratteliPath z = zigzag_path(spec.N, two_j);
  CVector v = build_path_state(z, two_j, spec.phase);
  auto w = beta_word(spec.N);
  std::vector<int> w2 = w;
  w2.insert(w2.end(), w.begin(), w.end());
  CMatrix out = apply_hecke_word(spec, w2, CMatrix(v));
  return v.transpose() * out.col(0);
}

inline nlohmann::json to_json(const BraidReport& r, double tol) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : r.blocks)
    blocks.push_back({{"j", b.two_j / 2.0},
                      {"dim", b.dim},
                      {"chi_expected", {b.chi_expected.real(), b.chi_expected.imag()}},
                      {"chi_measured", {b.chi_measured.real(), b.chi_measured.imag()}},
                      {"beta2_exponent", b.beta2_exponent},
                      {"beta2_measured", {b.beta2_measured.real(), b.beta2_measured.imag()}},
                      {"residual", std::max(b.chi_block_residual, b.beta2_block_residual)},
                      {"sign_flip", b.sign_flip}});
  return {{"blocks", blocks}, {"tolerance", tol}, {"version", kVersion}};
}

}  // namespace qxxz
