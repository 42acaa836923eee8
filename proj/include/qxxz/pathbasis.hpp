#pragma once
// Path states |j,m> in the spin basis and the TL action on paths.

#include <bitset>
#include <map>
#include <string>

#include "cgc.hpp"
#include "chain.hpp"
#include "paths.hpp"

namespace qxxz {

// <alpha|j,m> = prod_k CG(j_k, 1/2, j_{k+1}; m_k, alpha_{k+1}), m_k the partial weight of the first k sites.
inline CVector build_path_state(const BratteliPath& path, int two_m, const QPhase& ph, bool conjugated = false) {
  const int N = path.N();
  if (std::abs(two_m) > path.endpoint2() || (path.endpoint2() - two_m) % 2)
    throw std::invalid_argument("build_path_state: |m| exceeds endpoint");
  check_dim(1L << N, "build_path_state");
  CVector v = CVector::Zero(1L << N);
  // site 1 has j_1 = 1/2 and weight alpha_1
  auto rec = [&](auto&& self, int k, int m_k, long idx, cplx amp) -> void {
    if (k == N) {
      if (m_k == two_m) v(idx) = conjugated ? std::conj(amp) : amp;
      return;
    }
    const int jk = path.two_j[k], jn = path.two_j[k + 1];
    for (int a : {1, -1}) {
      const int mn = m_k + a;
      if (std::abs(mn) > jn) continue;
      if (std::abs(two_m - mn) > N - k - 1) continue;
      cplx c = cgc(ph, jk, m_k, a, jn);
      if (c == cplx(0)) continue;
      self(self, k + 1, mn, (idx << 1) | (a < 0 ? 1L : 0L), amp * c);
    }
  };
  for (int a : {1, -1}) rec(rec, 1, a, a < 0 ? 1L : 0L, 1.0);
  return v;
}

struct PathLabel {
  int path;   // index into PathBasis::family.paths
  int two_m;
};

// Columns: all path states of a family, path-major, m ascending.
struct PathBasis {
  PathFamily family;
  std::vector<PathLabel> labels;
  CMatrix psi;

  long size() const { return psi.cols(); }
  std::vector<int> columns_with_endpoint(int two_j) const {
    std::vector<int> out;
    for (size_t c = 0; c < labels.size(); ++c)
      if (family.paths[labels[c].path].endpoint2() == two_j) out.push_back(static_cast<int>(c));
    return out;
  }
  int column_of(int path, int two_m) const {
    for (size_t c = 0; c < labels.size(); ++c)
      if (labels[c].path == path && labels[c].two_m == two_m) return static_cast<int>(c);
    return -1;
  }
};

// Restricted family when ph is a root of unity, all paths otherwise.
// A fixed weight two_m keeps only columns of that weight.
inline PathBasis build_path_basis(int N, const QPhase& ph, std::optional<int> endpoint2 = std::nullopt,
                                  std::optional<int> two_m = std::nullopt) {
  std::optional<int> r;
  if (ph.is_root_of_unity()) r = ph.r_int();
  PathBasis b{enumerate_paths(N, r, endpoint2), {}, {}};
  for (size_t p = 0; p < b.family.paths.size(); ++p) {
    const int J = b.family.paths[p].endpoint2();
    for (int m = -J; m <= J; m += 2)
      if (!two_m || *two_m == m) b.labels.push_back({static_cast<int>(p), m});
  }
  b.psi.resize(1L << N, static_cast<long>(b.labels.size()));
  for (size_t c = 0; c < b.labels.size(); ++c)
    b.psi.col(static_cast<long>(c)) = build_path_state(b.family.paths[b.labels[c].path], b.labels[c].two_m, ph);
  return b;
}

struct PairingReport {
  double pairing_residual = 0;     // max |_T<a|b> - delta_ab|
  double resolution_residual = 0;  // sum |a><a|_T acting on the span
  int span_rank = 0;
  long family_size = 0;
};

inline PairingReport pairing_check(const PathBasis& b) {
  PairingReport rep;
  const long n = b.size();
  rep.family_size = n;
  CMatrix g = b.psi.transpose() * b.psi;
  rep.pairing_residual = op_norm_inf(g - CMatrix::Identity(n, n));
  CMatrix Q = column_frame(b.psi);
  rep.span_rank = static_cast<int>(Q.cols());
  rep.resolution_residual = op_norm_inf(b.psi * (b.psi.transpose() * Q) - Q);
  return rep;
}

// Intrinsic TL matrix on a path family: rows/cols indexed by family.paths.
inline Eigen::MatrixXd tl_action_on_paths(const PathFamily& fam, int k, const QPhase& ph) {
  if (k < 1 || k > fam.N - 1) throw std::out_of_range("tl_action_on_paths: generator index");
  std::map<std::vector<int>, int> index;
  for (size_t p = 0; p < fam.paths.size(); ++p) index[fam.paths[p].two_j] = static_cast<int>(p);
  const long n = static_cast<long>(fam.paths.size());
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n, n);
  for (long c = 0; c < n; ++c) {
    const auto& tj = fam.paths[c].two_j;
    if (tj[k - 1] != tj[k + 1]) continue;
    for (int d : {1, -1}) {
      const int jp = tj[k - 1] + d;
      if (jp < 0) continue;
      auto target = tj;
      target[k] = jp;
      auto it = index.find(target);
      if (it == index.end()) continue;
      const double rad = q_int(ph, tj[k] + 1) * q_int(ph, jp + 1);
      if (rad < -1e-13) throw NegativeRadicand("tl_action_on_paths: negative radicand");
      const int sgn = (((tj[k] - jp) / 2 + 1) % 2 == 0) ? 1 : -1;
      M(it->second, c) += std::sqrt(std::max(rad, 0.0)) / (sgn * q_int(ph, tj[k - 1] + 1));
    }
  }
  return M;
}

// Spin-basis E_k pulled into the path basis with the T-dual pairing, compared with the intrinsic matrix.
inline double representation_isomorphism_check(int N, int two_j, const QPhase& ph) {
  ChainSpec spec(N, ph);
  double worst = 0;
  PathBasis all = build_path_basis(N, ph, two_j);
  if (all.family.paths.empty()) throw std::invalid_argument("representation_isomorphism_check: empty family");
  std::vector<SpMatrix> E;
  for (int k = 1; k < N; ++k) E.push_back(tl_generator_sparse(spec, k));
  for (int m = -two_j; m <= two_j; m += 2) {
    PathBasis b = build_path_basis(N, ph, two_j, m);
    for (int k = 1; k < N; ++k) {
      Eigen::MatrixXd intrinsic = tl_action_on_paths(b.family, k, ph);
      CMatrix conj = b.psi.transpose() * (E[k - 1] * b.psi);
      worst = std::max(worst, op_norm_inf(conj - intrinsic.cast<cplx>()));
    }
  }
  return worst;
}

// S^{+-}|j,m> = sqrt([j-+m][j+-m+1]) |j,m+-1> for every path of the basis.
inline double qgroup_covariance_residual(const PathBasis& b, const ChainSpec& spec) {
  auto g = qgroup_generators_sparse(spec);
  double worst = 0;
  for (size_t c = 0; c < b.labels.size(); ++c) {
    const auto& L = b.labels[c];
    const double j = b.family.paths[L.path].endpoint2() / 2.0, m = L.two_m / 2.0;
    for (int s : {1, -1}) {
      CVector lhs = (s > 0 ? g.Splus : g.Sminus) * b.psi.col(static_cast<long>(c));
      int tgt = b.column_of(L.path, L.two_m + 2 * s);
      CVector rhs = CVector::Zero(lhs.size());
      if (tgt >= 0)
        rhs = std::sqrt(q_int(spec.phase, j - s * m) * q_int(spec.phase, j + s * m + 1)) * b.psi.col(tgt);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

inline std::string bitstring(long idx, int N) {
  std::string s(N, '0');
  for (int k = 1; k <= N; ++k) s[k - 1] = site_bit(idx, N, k) ? '1' : '0';
  return s;
}

inline nlohmann::json path_state_json(const BratteliPath& p, int two_m, const CVector& v) {
  nlohmann::json amps = nlohmann::json::array();
  for (long i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 0) amps.push_back({bitstring(i, p.N()), v(i).real(), v(i).imag()});
  return {{"path", p.two_j}, {"m", two_m / 2.0}, {"amplitudes", amps}};
}

}  // namespace qxxz
