#pragma once
// Dense complex matrix helpers on top of Eigen.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnum.hpp"

namespace qxxz {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using SpMatrix = Eigen::SparseMatrix<cplx>;

// Largest full-space dimension handled densely; QXXZ_MAX_DIM overrides.
inline long max_dense_dim() {
  if (const char* s = std::getenv("QXXZ_MAX_DIM")) {
    long v = std::strtol(s, nullptr, 10);
    if (v > 0) return v;
  }
  return 4096;
}

inline void check_dim(long dim, const char* what) {
  if (dim > max_dense_dim())
    throw std::length_error(std::string(what) + ": dimension " + std::to_string(dim) +
                            " exceeds cap " + std::to_string(max_dense_dim()));
}

inline CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const long rows = a.rows() * b.rows(), cols = a.cols() * b.cols();
  if (rows * cols > (1L << 24)) throw std::length_error("kron: result exceeds 2^24 entries");
  CMatrix out(rows, cols);
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double op_norm_inf(const CMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

struct HermitianEig {
  RVector values;   // ascending
  CMatrix vectors;  // columns
};

inline HermitianEig hermitian_eig(const CMatrix& a, double tol = kDefaultTol) {
  if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eig: matrix not square");
  double scale = std::max(1.0, op_norm_inf(a));
  if (op_norm_inf(a - a.adjoint()) > tol * scale)
    throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  return {es.eigenvalues(), es.eigenvectors()};
}

class PositivityError : public std::runtime_error {
 public:
  PositivityError(double min_eig)
      : std::runtime_error("positive_sqrt: smallest eigenvalue " + std::to_string(min_eig) +
                           " is not positive"),
        min_eig_(min_eig) {}
  double min_eig() const { return min_eig_; }

 private:
  double min_eig_;
};

inline CMatrix positive_sqrt(const CMatrix& a, double tol = kDefaultTol) {
  auto [vals, vecs] = hermitian_eig(a, tol);
  if (vals.size() == 0) return CMatrix(0, 0);
  if (!(vals(0) > tol)) throw PositivityError(vals(0));
  return vecs * vals.cwiseSqrt().asDiagonal() * vecs.adjoint();
}

inline RVector singular_values(const CMatrix& a) {
  if (a.size() == 0) return RVector(0);
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues();
}

inline int numeric_rank(const CMatrix& a, double tol = kDefaultTol) {
  RVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  return static_cast<int>((s.array() > tol * s(0)).count());
}

// Orthonormal basis of the column space, rank decided relative to the largest singular value.
inline CMatrix column_frame(const CMatrix& a, double tol = 1e-12) {
  if (a.cols() == 0) return CMatrix(a.rows(), 0);
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  int rank = s(0) > 0 ? static_cast<int>((s.array() > tol * s(0)).count()) : 0;
  return svd.matrixU().leftCols(rank);
}

// Basis states with fixed total S^z, site 1 stored in the most significant bit, bit 0 = spin up.
struct SectorMap {
  int N = 0;
  int two_m = 0;
  std::vector<long> indices;
};

inline int popcount_down(long idx) { return __builtin_popcountl(static_cast<unsigned long>(idx)); }

inline int two_sz_of(long idx, int N) { return N - 2 * popcount_down(idx); }

inline SectorMap make_sector(int N, int two_m) {
  if ((N - two_m) % 2 != 0 || std::abs(two_m) > N) throw std::invalid_argument("make_sector: bad weight");
  SectorMap s{N, two_m, {}};
  for (long idx = 0; idx < (1L << N); ++idx)
    if (two_sz_of(idx, N) == two_m) s.indices.push_back(idx);
  return s;
}

inline CMatrix sector_restrict(const CMatrix& a, const SectorMap& sec, double tol = kDefaultTol) {
  const long d = 1L << sec.N;
  if (a.rows() != d || a.cols() != d) throw std::invalid_argument("sector_restrict: dimension mismatch");
  double leak = 0.0;
  for (long c = 0; c < d; ++c)
    for (long r = 0; r < d; ++r)
      if (two_sz_of(r, sec.N) != two_sz_of(c, sec.N)) leak = std::max(leak, std::abs(a(r, c)));
  if (leak > tol * std::max(1.0, op_norm_inf(a)))
    throw std::invalid_argument("sector_restrict: operator mixes S^z sectors");
  const long n = static_cast<long>(sec.indices.size());
  CMatrix out(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) out(i, j) = a(sec.indices[i], sec.indices[j]);
  return out;
}

inline SpMatrix sector_restrict(const SpMatrix& a, const SectorMap& sec) {
  std::vector<long> pos(1L << sec.N, -1);
  for (size_t i = 0; i < sec.indices.size(); ++i) pos[sec.indices[i]] = static_cast<long>(i);
  std::vector<Eigen::Triplet<cplx>> trips;
  for (int k = 0; k < a.outerSize(); ++k)
    for (SpMatrix::InnerIterator it(a, k); it; ++it)
      if (pos[it.row()] >= 0 && pos[it.col()] >= 0) trips.emplace_back(pos[it.row()], pos[it.col()], it.value());
  const long n = static_cast<long>(sec.indices.size());
  SpMatrix out(n, n);
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

}  // namespace qxxz
