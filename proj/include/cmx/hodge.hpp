// Hodge analysis of cross-edge flows: divergence and curl, the orthogonal
// three-part decomposition, and the closed-form least-squares estimators
// for denoising, together with NMSE.
//
// All operations act on the (0,0) class of one layer pair, seen from one of
// its two layers ("view"). For view = l the flow is graded by the maps
//   B0 = B_{0,0}^{(l),m}   (cross-edges -> layer-m vertices)
//   B1 = B_{1,0}^{(l),m}   ((1,0) cells -> cross-edges)
// and for view = m by their toward-side counterparts B_{0,0}^{l,(m)} and
// B_{0,1}^{l,(m)}. Gradient flows live in img(B0^T), curl flows in
// img(B1), harmonic flows in the kernel of the (0,0)-cross-Laplacian.

#pragma once

#include "cmx/boundaries.hpp"
#include "cmx/cochain.hpp"
#include "cmx/complex.hpp"
#include "cmx/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cmx {

/// Moore-Penrose pseudo-inverse by SVD; singular values <= tol * sigma_max
/// are treated as zero.
inline Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double tol = kDefaultTol) {
  if (m.size() == 0) return Eigen::MatrixXd::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? tol * sv(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

/// Orthonormal basis of the column space of m (empty for a zero matrix).
inline Eigen::MatrixXd image_basis(const Eigen::MatrixXd& m, double tol = kDefaultTol) {
  if (m.size() == 0) return Eigen::MatrixXd::Zero(m.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? tol * sv(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  return svd.matrixU().leftCols(rank);
}

/// The pair of boundary maps grading cross-edge flows for one view.
struct CrossEdgeOps {
  int l = 0, m = 0, view = 0;
  SignedIncidence b0; ///< rows: view-opposite vertices, cols: cross-edges
  SignedIncidence b1; ///< rows: cross-edges, cols: order-2 cells of the view's class
};

inline CrossEdgeOps cross_edge_ops(const CellMultiComplex& x, int l, int m, int view) {
  if (view != l && view != m)
    throw std::invalid_argument("view must be one of the pair's layers");
  CrossEdgeOps ops;
  ops.l = l;
  ops.m = m;
  ops.view = view;
  if (view == l) {
    ops.b0 = cross_boundary_from(x, l, m, 0, 0);
    ops.b1 = cross_boundary_from(x, l, m, 1, 0);
  } else {
    ops.b0 = cross_boundary_toward(x, l, m, 0, 0);
    ops.b1 = cross_boundary_toward(x, l, m, 0, 1);
  }
  return ops;
}

namespace detail {

inline void require_cross_edge_signal(const CrossEdgeOps& ops, const Cochain& s, const char* what) {
  require_index(s, ops.b0.cols, what);
}

} // namespace detail

/// Net flow at each vertex of the layer opposite the view: div = B0 s.
inline Cochain divergence(const CellMultiComplex& x, int l, int m, int view, const Cochain& s1) {
  CrossEdgeOps ops = cross_edge_ops(x, l, m, view);
  detail::require_cross_edge_signal(ops, s1, "divergence");
  return Cochain(ops.b0.rows, ops.b0.dense() * s1.values);
}

/// Circulation around each filled cone of the view's class: curl = B1^T s.
inline Cochain curl(const CellMultiComplex& x, int l, int m, int view, const Cochain& s1) {
  CrossEdgeOps ops = cross_edge_ops(x, l, m, view);
  detail::require_cross_edge_signal(ops, s1, "curl");
  return Cochain(ops.b1.cols, ops.b1.dense().transpose() * s1.values);
}

struct DivCurl {
  Cochain divergence;
  Cochain curl;
};

inline DivCurl div_curl(const CellMultiComplex& x, int l, int m, int view, const Cochain& s1) {
  CrossEdgeOps ops = cross_edge_ops(x, l, m, view);
  detail::require_cross_edge_signal(ops, s1, "div_curl");
  return {Cochain(ops.b0.rows, ops.b0.dense() * s1.values),
          Cochain(ops.b1.cols, ops.b1.dense().transpose() * s1.values)};
}

struct HodgeComponents {
  Cochain gradient_part; ///< in img(B0^T)
  Cochain curl_part;     ///< in img(B1)
  Cochain harmonic_part; ///< remainder, in the cross-Laplacian kernel
  Cochain vertex_potential; ///< s0 on the opposite layer's vertices (minimum norm)
  Cochain cell_potential;   ///< s2 on the view's order-2 cells (minimum norm)
};

namespace detail {

inline HodgeComponents components_from_parts(const CrossEdgeOps& ops, const Cochain& y,
                                             Eigen::VectorXd grad, Eigen::VectorXd curl_v,
                                             Eigen::VectorXd s0, Eigen::VectorXd s2) {
  HodgeComponents c;
  c.gradient_part = Cochain(y.ids, std::move(grad));
  c.curl_part = Cochain(y.ids, std::move(curl_v));
  c.harmonic_part = Cochain(y.ids, y.values - c.gradient_part.values - c.curl_part.values);
  c.vertex_potential = Cochain(ops.b0.rows, std::move(s0));
  c.cell_potential = Cochain(ops.b1.cols, std::move(s2));
  return c;
}

} // namespace detail

/// Orthogonal decomposition of a cross-edge signal, computed by projecting
/// onto orthonormal bases of img(B0^T) and img(B1).
inline HodgeComponents hodge_decompose(const CellMultiComplex& x, int l, int m, int view,
                                       const Cochain& s1, double tol = kDefaultTol) {
  CrossEdgeOps ops = cross_edge_ops(x, l, m, view);
  detail::require_cross_edge_signal(ops, s1, "hodge_decompose");
  Eigen::MatrixXd B0 = ops.b0.dense();
  Eigen::MatrixXd B1 = ops.b1.dense();
  Eigen::MatrixXd Qg = image_basis(B0.transpose(), tol);
  Eigen::MatrixXd Qc = image_basis(B1, tol);
  Eigen::VectorXd grad = Qg * (Qg.transpose() * s1.values);
  Eigen::VectorXd curl_v = Qc * (Qc.transpose() * s1.values);
  Eigen::VectorXd s0 = pseudo_inverse(B0.transpose(), tol) * grad;
  Eigen::VectorXd s2 = pseudo_inverse(B1, tol) * curl_v;
  return detail::components_from_parts(ops, s1, std::move(grad), std::move(curl_v),
                                       std::move(s0), std::move(s2));
}

/// Closed-form least-squares estimators of the three components of a noisy
/// flow:
///   s0 = (B0 B0^T)^+ B0 y,  s2 = (B1^T B1)^+ B1^T y,
///   harmonic = y - B0^T s0 - B1 s2.
inline HodgeComponents estimate_components(const CellMultiComplex& x, int l, int m, int view,
                                           const Cochain& y1, double tol = kDefaultTol) {
  CrossEdgeOps ops = cross_edge_ops(x, l, m, view);
  detail::require_cross_edge_signal(ops, y1, "estimate_components");
  Eigen::MatrixXd B0 = ops.b0.dense();
  Eigen::MatrixXd B1 = ops.b1.dense();
  Eigen::VectorXd s0 = pseudo_inverse(B0 * B0.transpose(), tol) * (B0 * y1.values);
  Eigen::VectorXd s2 = pseudo_inverse(B1.transpose() * B1, tol) * (B1.transpose() * y1.values);
  Eigen::VectorXd grad = B0.transpose() * s0;
  Eigen::VectorXd curl_v = B1 * s2;
  return detail::components_from_parts(ops, y1, std::move(grad), std::move(curl_v),
                                       std::move(s0), std::move(s2));
}

/// Sum of the three parts (the denoised flow estimate).
inline Cochain reconstruct(const HodgeComponents& c) {
  require_same_index(c.gradient_part, c.curl_part, "reconstruct");
  require_same_index(c.gradient_part, c.harmonic_part, "reconstruct");
  return Cochain(c.gradient_part.ids,
                 c.gradient_part.values + c.curl_part.values + c.harmonic_part.values);
}

/// Normalized error |estimate - truth| / |truth|; set squared for the
/// ratio of squared norms instead.
inline double nmse(const Cochain& estimate, const Cochain& truth, bool squared = false) {
  require_same_index(estimate, truth, "nmse");
  double denom = truth.values.norm();
  if (denom == 0.0) throw std::invalid_argument("nmse: reference signal has zero norm");
  double r = (estimate.values - truth.values).norm() / denom;
  return squared ? r * r : r;
}

} // namespace cmx
