#pragma once
// The metric eta = sum |j,m>_T _T<j,m| and the checks built on it.

#include <Eigen/Eigenvalues>
#include <random>

#include "pathbasis.hpp"
#include "version.hpp"

namespace qxxz {

// Integer r >= 3 uses restricted paths; real r must exceed N.
inline void check_metric_regime(int N, const QPhase& ph) {
  if (!ph.is_root_of_unity() && !(ph.r() > N))
    throw std::domain_error("metric: non-integer r must exceed N (positivity bands break otherwise)");
}

// eta = conj(Psi) Psi^T, so eta|j,m> = conj(|j,m>).
inline CMatrix build_eta(const PathBasis& b) { return b.psi.conjugate() * b.psi.transpose(); }

inline CMatrix build_eta(int N, const QPhase& ph) {
  check_metric_regime(N, ph);
  return build_eta(build_path_basis(N, ph));
}

// Everything the span checks need, computed once per (N, r).
struct SpanContext {
  ChainSpec spec;
  PathBasis basis;
  CMatrix Q;           // orthonormal frame of span(Psi)
  CMatrix QdConjPsi;   // Q^dagger conj(Psi)
  CMatrix PsiTQ;       // Psi^T Q
  std::vector<SpMatrix> E;
  SpMatrix H, Sz, P, R;
  QGroupGenerators S;

  SpanContext(int N, const QPhase& ph) : spec(N, ph), basis((check_metric_regime(N, ph), build_path_basis(N, ph))) {
    Q = column_frame(basis.psi);
    QdConjPsi = Q.adjoint() * basis.psi.conjugate();
    PsiTQ = basis.psi.transpose() * Q;
    for (int k = 1; k < N; ++k) E.push_back(tl_generator_sparse(spec, k));
    H = hamiltonian_sparse(spec);
    Sz = sz_sparse(spec);
    P = parity_sparse(spec);
    R = spin_reversal_sparse(spec);
    S = qgroup_generators_sparse(spec);
  }

  int span_rank() const { return static_cast<int>(Q.cols()); }
  bool full_space() const { return span_rank() == spec.dim(); }

  // Q^dagger (eta X - L eta) Q, the span compression of the relation eta X = L eta.
  double eta_relation(const SpMatrix& X, const SpMatrix& L) const {
    CMatrix lhs = QdConjPsi * (basis.psi.transpose() * (X * Q));
    CMatrix rhs = (Q.adjoint() * (L * basis.psi.conjugate())) * PsiTQ;
    return op_norm_inf(lhs - rhs);
  }

  // Psi^T X Psi, the T-dual reduction used for operator identities.
  CMatrix reduce(const SpMatrix& X) const { return basis.psi.transpose() * (X * basis.psi); }

  CMatrix gram() const { return QdConjPsi * QdConjPsi.adjoint(); }
};

struct JordanBlock {
  int sector_two_m = 0;
  cplx lambda;
  int algebraic = 0;       // cluster size
  int geometric = 0;       // dim ker(H - lambda)
  int rank1 = 0, rank2 = 0;
  double self_overlap = 0; // min |<psi, phi>| over unit kernel vectors of H - lambda and H^* - conj(lambda)
};

struct JordanReport {
  std::vector<JordanBlock> blocks;
  std::vector<std::string> warnings;
  double cluster_radius = 1e-7;
  double rank_tol = 1e-7;
};

inline JordanReport detect_jordan_blocks(const CMatrix& h, int sector_two_m = 0, double cluster_radius = 1e-7,
                                         double rank_tol = 1e-7) {
  JordanReport rep;
  rep.cluster_radius = cluster_radius;
  rep.rank_tol = rank_tol;
  const long n = h.rows();
  if (n == 0) return rep;
  Eigen::ComplexEigenSolver<CMatrix> es(h, false);
  std::vector<cplx> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
  std::vector<std::vector<cplx>> clusters;
  std::vector<bool> used(n, false);
  for (long i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::vector<cplx> c{ev[i]};
    used[i] = true;
    for (long k = i + 1; k < n; ++k)
      if (!used[k] && std::abs(ev[k] - ev[i]) < cluster_radius) {
        c.push_back(ev[k]);
        used[k] = true;
      }
    clusters.push_back(c);
  }
  std::vector<cplx> centers;
  for (auto& c : clusters) {
    cplx s = 0;
    for (auto x : c) s += x;
    centers.push_back(s / double(c.size()));
  }
  for (size_t a = 0; a < centers.size(); ++a)
    for (size_t b = a + 1; b < centers.size(); ++b)
      if (std::abs(centers[a] - centers[b]) < 1e3 * cluster_radius)
        rep.warnings.push_back("ambiguous clustering near " + std::to_string(centers[a].real()));
  const CMatrix I = CMatrix::Identity(n, n);
  for (size_t ci = 0; ci < clusters.size(); ++ci) {
    if (clusters[ci].size() < 2) continue;
    const cplx lam = centers[ci];
    CMatrix A = h - lam * I;
    Eigen::BDCSVD<CMatrix> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RVector& s = svd.singularValues();
    int r1 = static_cast<int>((s.array() > rank_tol * s(0)).count());
    int r2 = numeric_rank(A * A, rank_tol);
    if (r1 == r2) continue;
    JordanBlock blk{sector_two_m, lam, static_cast<int>(clusters[ci].size()), static_cast<int>(n - r1), r1, r2, 0};
    // right kernel of A and right kernel of A^dagger (left kernel of A)
    CMatrix phi = svd.matrixV().rightCols(n - r1);
    CMatrix psi = svd.matrixU().rightCols(n - r1);
    RVector ov = singular_values(psi.adjoint() * phi);
    blk.self_overlap = ov.size() ? ov(ov.size() - 1) : 0.0;
    rep.blocks.push_back(blk);
  }
  return rep;
}

// Sector-by-sector scan of H.
inline JordanReport detect_jordan_blocks(const ChainSpec& spec, double cluster_radius = 1e-7, double rank_tol = 1e-7) {
  JordanReport all;
  all.cluster_radius = cluster_radius;
  all.rank_tol = rank_tol;
  SpMatrix H = hamiltonian_sparse(spec);
  for (int m = -spec.N; m <= spec.N; m += 2) {
    SectorMap sec = make_sector(spec.N, m);
    CMatrix hs(sector_restrict(H, sec));
    auto rep = detect_jordan_blocks(hs, m, cluster_radius, rank_tol);
    all.blocks.insert(all.blocks.end(), rep.blocks.begin(), rep.blocks.end());
    all.warnings.insert(all.warnings.end(), rep.warnings.begin(), rep.warnings.end());
  }
  return all;
}

struct MetricReport {
  int N = 0;
  double r = 0;
  bool reduced = true;  // false when the span is the full space
  int span_rank = 0;
  double min_eig = 0;   // smallest eigenvalue of the Gram form on the span
  double eta_hermiticity = 0;
  double pairing = 0;
  // compressed to the span
  double res_Ek = 0, res_Spm = 0, res_Sz = 0, res_H = 0;
  // full-space residuals, reported only
  double full_Ek = -1, full_Spm = -1, full_Sz = -1, full_H = -1;
  double spectrum_max_imag = 0;
  double eta_inner_product = 0;  // <x, H y>_eta - <H x, y>_eta on random span vectors
  JordanReport jordan;
  double tol = kDefaultTol;
};

inline MetricReport check_intertwining(const SpanContext& ctx, bool with_full_space = true, bool with_jordan = false) {
  MetricReport rep;
  rep.N = ctx.spec.N;
  rep.r = ctx.spec.phase.r();
  rep.span_rank = ctx.span_rank();
  rep.reduced = !ctx.full_space();
  const long n = ctx.basis.size();
  rep.pairing = op_norm_inf(ctx.basis.psi.transpose() * ctx.basis.psi - CMatrix::Identity(n, n));
  CMatrix G = ctx.gram();
  rep.eta_hermiticity = op_norm_inf(G - G.adjoint());
  rep.min_eig = Eigen::SelfAdjointEigenSolver<CMatrix>(0.5 * (G + G.adjoint()), Eigen::EigenvaluesOnly).eigenvalues()(0);
  for (const auto& e : ctx.E) rep.res_Ek = std::max(rep.res_Ek, ctx.eta_relation(e, SpMatrix(e.adjoint())));
  rep.res_Spm = std::max(ctx.eta_relation(ctx.S.Splus, ctx.S.Splus_op), ctx.eta_relation(ctx.S.Sminus, ctx.S.Sminus_op));
  rep.res_Sz = ctx.eta_relation(ctx.Sz, ctx.Sz);
  rep.res_H = ctx.eta_relation(ctx.H, SpMatrix(ctx.H.adjoint()));
  if (with_full_space && ctx.spec.dim() <= 1024) {
    CMatrix eta = build_eta(ctx.basis);
    auto full = [&](const SpMatrix& X, const SpMatrix& L) { return op_norm_inf(eta * X - CMatrix(L) * eta); };
    rep.full_Ek = 0;
    for (const auto& e : ctx.E) rep.full_Ek = std::max(rep.full_Ek, full(e, SpMatrix(e.adjoint())));
    rep.full_Spm = std::max(full(ctx.S.Splus, ctx.S.Splus_op), full(ctx.S.Sminus, ctx.S.Sminus_op));
    rep.full_Sz = full(ctx.Sz, ctx.Sz);
    rep.full_H = full(ctx.H, SpMatrix(ctx.H.adjoint()));
  }
  CMatrix hred = ctx.reduce(ctx.H);
  Eigen::ComplexEigenSolver<CMatrix> es(hred, false);
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    rep.spectrum_max_imag = std::max(rep.spectrum_max_imag, std::abs(es.eigenvalues()(i).imag()));
  {
    // <x, H y>_eta = <H x, y>_eta on the span, frame coordinates
    std::mt19937 rng(12345);
    std::normal_distribution<double> nd;
    CVector a(ctx.span_rank()), c(ctx.span_rank());
    for (long i = 0; i < a.size(); ++i) {
      a(i) = cplx(nd(rng), nd(rng));
      c(i) = cplx(nd(rng), nd(rng));
    }
    CVector x = ctx.Q * a, y = ctx.Q * c;
    CMatrix eta = ctx.basis.psi.conjugate() * ctx.basis.psi.transpose();
    cplx lhs = x.dot(eta * (ctx.H * y));
    cplx rhs = (ctx.H * x).eval().dot(eta * y);
    rep.eta_inner_product = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
  }
  if (with_jordan) rep.jordan = detect_jordan_blocks(ctx.spec);
  return rep;
}

inline MetricReport check_intertwining(int N, const QPhase& ph) { return check_intertwining(SpanContext(N, ph)); }

struct Hermitized {
  CMatrix Htilde;    // on the span, orthonormal frame coordinates
  CMatrix sqrt_eta;  // Gram form square root in the same frame
  double hermiticity = 0;
};

inline Hermitized hermitize(const SpanContext& ctx, double tol = kDefaultTol) {
  CMatrix G = ctx.gram();
  G = 0.5 * (G + G.adjoint());
  CMatrix s = positive_sqrt(G, tol);
  // H in the frame: G^{-1} Q^dagger eta H Q
  CMatrix etaHQ = ctx.QdConjPsi * (ctx.basis.psi.transpose() * (ctx.H * ctx.Q));
  CMatrix hq = G.ldlt().solve(etaHQ);
  CMatrix sinv = s.inverse();
  Hermitized out{s * hq * sinv, s, 0};
  out.hermiticity = op_norm_inf(out.Htilde - out.Htilde.adjoint());
  return out;
}

struct UnreducedPositivity {
  int rank = 0;
  long dim = 0;
  double min_eig = 0;
  bool sqrt_failed = false;
  std::string message;
};

// The restricted-path eta taken on the whole space, where it is only semi-definite.
inline UnreducedPositivity unreduced_positivity(int N, const QPhase& ph, double tol = kDefaultTol) {
  CMatrix eta = build_eta(N, ph);
  UnreducedPositivity u;
  u.dim = eta.rows();
  u.rank = numeric_rank(eta, tol);
  try {
    positive_sqrt(eta, tol);
  } catch (const PositivityError& e) {
    u.sqrt_failed = true;
    u.min_eig = e.min_eig();
    u.message = e.what();
  }
  if (!u.sqrt_failed) u.min_eig = hermitian_eig(eta, tol).values(0);
  return u;
}

inline nlohmann::json to_json(const JordanReport& j) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : j.blocks)
    blocks.push_back({{"m", b.sector_two_m / 2.0},
                      {"lambda", {b.lambda.real(), b.lambda.imag()}},
                      {"algebraic", b.algebraic},
                      {"geometric", b.geometric},
                      {"rank", {b.rank1, b.rank2}},
                      {"self_overlap", b.self_overlap}});
  return blocks;
}

inline nlohmann::json to_json(const MetricReport& m) {
  nlohmann::json j = {{"N", m.N},
                      {"r", m.r},
                      {"reduced", m.reduced},
                      {"span_rank", m.span_rank},
                      {"min_eig", m.min_eig},
                      {"residuals", {{"Ek", m.res_Ek}, {"Spm", m.res_Spm}, {"Sz", m.res_Sz}, {"H", m.res_H}}},
                      {"spectrum_max_imag", m.spectrum_max_imag},
                      {"eta_inner_product", m.eta_inner_product},
                      {"jordan", to_json(m.jordan)},
                      {"tolerance", m.tol},
                      {"version", kVersion}};
  if (m.full_Ek >= 0)
    j["full_space_residuals"] = {{"Ek", m.full_Ek}, {"Spm", m.full_Spm}, {"Sz", m.full_Sz}, {"H", m.full_H}};
  return j;
}

}  // namespace qxxz
