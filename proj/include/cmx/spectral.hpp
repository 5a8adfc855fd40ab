// Laplacian assembly, eigendecomposition, kernel extraction (Betti and
// cross-Betti numbers) and the Fourier transform on cross-edge signals.
//
// Laplacians are assembled as integer products of incidence matrices and
// cast to double once, so symmetry is exact. Kernel membership uses a
// relative tolerance: an eigenvalue belongs to the kernel when it is
// <= tol * max(1, lambda_max).

#pragma once

#include "cmx/boundaries.hpp"
#include "cmx/cochain.hpp"
#include "cmx/complex.hpp"
#include "cmx/incidence.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cmx {

inline constexpr double kDefaultTol = 1e-8;

struct LaplacianMatrix {
  Eigen::MatrixXd matrix;
  std::vector<CellRef> index;
  std::string provenance;
};

struct Spectrum {
  Eigen::VectorXd eigenvalues;  ///< ascending
  Eigen::MatrixXd eigenvectors; ///< orthonormal columns, sign-fixed
  std::vector<CellRef> index;
  std::vector<int> kernel_indices; ///< prefix of 0..size-1
  double tolerance = kDefaultTol;

  int kernel_dim() const { return static_cast<int>(kernel_indices.size()); }
};

/// Symmetric eigendecomposition with deterministic signs: each eigenvector
/// is flipped so its first largest-magnitude entry is positive.
inline Spectrum eigendecompose(const LaplacianMatrix& L, double tol = kDefaultTol) {
  Spectrum s;
  s.index = L.index;
  s.tolerance = tol;
  const Eigen::Index n = L.matrix.rows();
  if (n == 0) {
    s.eigenvalues.resize(0);
    s.eigenvectors.resize(0, 0);
    return s;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L.matrix);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigendecompose: solver did not converge on " + L.provenance);
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index at = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double a = std::abs(s.eigenvectors(i, j));
      if (a > best) {
        best = a;
        at = i;
      }
    }
    if (s.eigenvectors(at, j) < 0) s.eigenvectors.col(j) = -s.eigenvectors.col(j);
  }
  double cut = tol * std::max(1.0, s.eigenvalues(n - 1));
  for (Eigen::Index i = 0; i < n && s.eigenvalues(i) <= cut; ++i)
    s.kernel_indices.push_back(static_cast<int>(i));
  return s;
}

namespace detail {

inline LaplacianMatrix laplacian_from_parts(const SignedIncidence& lower,
                                            const SignedIncidence* upper,
                                            std::vector<CellRef> index,
                                            std::string provenance) {
  IntMatrix acc = lower.dense_int().transpose() * lower.dense_int();
  if (upper) acc += upper->dense_int() * upper->dense_int().transpose();
  LaplacianMatrix L;
  L.matrix = acc.cast<double>();
  L.index = std::move(index);
  L.provenance = std::move(provenance);
  return L;
}

} // namespace detail

/// L_0 = B_1 B_1^T on nodes, or L_1 = B_1^T B_1 + B_2 B_2^T on edges, of
/// the flattened complex.
inline LaplacianMatrix monolayer_laplacian(const CellMultiComplex& x, int k) {
  if (k != 0 && k != 1) throw std::invalid_argument("monolayer_laplacian: k must be 0 or 1");
  SignedIncidence b1 = monolayer_incidence(x, 1);
  if (k == 0) {
    IntMatrix acc = b1.dense_int() * b1.dense_int().transpose();
    return {acc.cast<double>(), b1.rows, "L0"};
  }
  SignedIncidence b2 = monolayer_incidence(x, 2);
  return detail::laplacian_from_parts(b1, &b2, b1.cols, "L1");
}

namespace detail {

inline std::string cross_provenance(const char* view, int l, int m, int k, int n) {
  return std::string("cross-laplacian ") + view + ", pair (" + std::to_string(l) + "," +
         std::to_string(m) + "), class (" + std::to_string(k) + "," + std::to_string(n) + ")";
}

inline void check_laplacian_class_from(int k, int n) {
  bool ok = (n == -1 && (k == 0 || k == 1)) ||
            (k >= 0 && n >= 0 && is_known_cross_class(k, n) && cross_order(k, n) == 2) ||
            (k == 0 && n == 0);
  if (!ok)
    throw std::invalid_argument("cross_laplacian_from: unsupported class (" + std::to_string(k) +
                                "," + std::to_string(n) + ")");
}

inline void check_laplacian_class_toward(int k, int n) {
  bool ok = (k == -1 && (n == 0 || n == 1)) ||
            (k >= 0 && n >= 0 && is_known_cross_class(k, n) && cross_order(k, n) == 2) ||
            (k == 0 && n == 0);
  if (!ok)
    throw std::invalid_argument("cross_laplacian_toward: unsupported class (" + std::to_string(k) +
                                "," + std::to_string(n) + ")");
}

} // namespace detail

/// Cross-Laplacian viewed from layer l:
///   L = B_{k,n}^T B_{k,n} + B_{k+1,n} B_{k+1,n}^T (from-view maps),
/// dropping the upper term when (k+1,n) lies outside the 2-order pipeline.
/// n = -1 reduces to the intra-layer Hodge Laplacian of order k on layer l.
inline LaplacianMatrix cross_laplacian_from(const CellMultiComplex& x, int l, int m, int k, int n) {
  detail::check_laplacian_class_from(k, n);
  SignedIncidence lower = cross_boundary_from(x, l, m, k, n);
  bool has_upper = n == -1 ? (k + 1 <= 2)
                           : (is_known_cross_class(k + 1, n) && cross_order(k + 1, n) <= 2);
  SignedIncidence upper;
  if (has_upper) upper = cross_boundary_from(x, l, m, k + 1, n);
  return detail::laplacian_from_parts(lower, has_upper ? &upper : nullptr, lower.cols,
                                      detail::cross_provenance("from", l, m, k, n));
}

/// Mirror of cross_laplacian_from with the toward-view maps; k = -1 reduces
/// to the intra-layer Hodge Laplacian of order n on layer m.
inline LaplacianMatrix cross_laplacian_toward(const CellMultiComplex& x, int l, int m, int k, int n) {
  detail::check_laplacian_class_toward(k, n);
  SignedIncidence lower = cross_boundary_toward(x, l, m, k, n);
  bool has_upper = k == -1 ? (n + 1 <= 2)
                           : (is_known_cross_class(k, n + 1) && cross_order(k, n + 1) <= 2);
  SignedIncidence upper;
  if (has_upper) upper = cross_boundary_toward(x, l, m, k, n + 1);
  return detail::laplacian_from_parts(lower, has_upper ? &upper : nullptr, lower.cols,
                                      detail::cross_provenance("toward", l, m, k, n));
}

struct MonolayerBetti {
  int beta0 = 0;
  int beta1 = 0;
};

/// Kernel dimensions of the flattened L_0 and L_1.
inline MonolayerBetti betti_monolayer(const CellMultiComplex& x, double tol = kDefaultTol) {
  MonolayerBetti b;
  b.beta0 = eigendecompose(monolayer_laplacian(x, 0), tol).kernel_dim();
  b.beta1 = eigendecompose(monolayer_laplacian(x, 1), tol).kernel_dim();
  return b;
}

struct CrossBettiVector {
  int l = 0, m = 0;
  CellClass cls;
  int from_view = 0;   ///< beta_{k,n}^{(l)}
  int toward_view = 0; ///< beta_{k,n}^{(m)}
};

/// Kernel dimensions of the two (k,n)-cross-Laplacians of a pair.
inline CrossBettiVector cross_betti(const CellMultiComplex& x, int l, int m, int k, int n,
                                    double tol = kDefaultTol) {
  CrossBettiVector v;
  v.l = l;
  v.m = m;
  v.cls = {k, n};
  v.from_view = eigendecompose(cross_laplacian_from(x, l, m, k, n), tol).kernel_dim();
  v.toward_view = eigendecompose(cross_laplacian_toward(x, l, m, k, n), tol).kernel_dim();
  return v;
}

/// Fourier transform on the spectrum's eigenbasis and its inverse.
inline Eigen::VectorXd gft(const Cochain& s, const Spectrum& spec) {
  require_index(s, spec.index, "gft");
  return spec.eigenvectors.transpose() * s.values;
}

inline Cochain igft(const Eigen::VectorXd& coeffs, const Spectrum& spec) {
  if (coeffs.size() != spec.eigenvalues.size())
    throw std::invalid_argument("igft: coefficient count does not match the spectrum");
  return Cochain(spec.index, spec.eigenvectors * coeffs);
}

} // namespace cmx
