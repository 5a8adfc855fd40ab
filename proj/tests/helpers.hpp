// Shared fixtures and independent oracles for the test suite.
//
// The oracles deliberately avoid the library's own linear-algebra paths:
// component counts come from a plain disjoint-set scan, ranks from a dense
// LU factorization, and integer matrix products from a map-based
// accumulator, so library results are checked against a second route.

#pragma once

#include "cmx/cmx.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace cmxtest {

inline std::string fixture_path(const std::string& name) {
  return std::string(CMX_FIXTURE_DIR) + "/" + name;
}

inline cmx::CellMultiComplex load_fixture(const std::string& name) {
  return cmx::load_cmc(fixture_path(name));
}

// Two nodes on layer 1 joined by an edge, one node on layer 2, and both
// layer-1 nodes tied to it by cross-edges. The optional 2-cell fills the
// resulting triangle with the traversal L1:1 -> L1:2 -> L2:1 -> L1:1.
inline cmx::CellMultiComplex make_fixture_a(bool filled) {
  cmx::ComplexBuilder b;
  b.add_layer(1);
  b.add_layer(2);
  b.add_node(1, 1);
  b.add_node(1, 2);
  b.add_node(2, 1);
  b.add_edge(1, 1, 2);
  b.add_cross_edge(1, 2, 1, 1);
  b.add_cross_edge(1, 2, 2, 1);
  if (filled)
    b.add_cross_cell(1, 2, 1, 0, {"L1/k1/0", "X1-2/c0,0/1", "-X1-2/c0,0/0"});
  return b.build();
}

// Same cross-edges as fixture A but the layer-1 endpoints are not joined,
// so the cone at L2:1 is open.
inline cmx::CellMultiComplex make_fixture_c() {
  cmx::ComplexBuilder b;
  b.add_layer(1);
  b.add_layer(2);
  b.add_node(1, 1);
  b.add_node(1, 2);
  b.add_node(2, 1);
  b.add_cross_edge(1, 2, 1, 1);
  b.add_cross_edge(1, 2, 2, 1);
  return b.build();
}

// Two layer-1 triangle clusters {1,2,3} and {4,5,6}. Layer 2 carries nodes
// 1..4 with one edge (1,2). Cross-edges attach nodes 3 and 4 to apex L2:3
// (an open cone bridging the clusters) and nodes 5 and 6 to apex L2:4 (a
// closed, unfilled cone inside the second cluster).
inline cmx::CellMultiComplex make_fixture_d() {
  cmx::ComplexBuilder b;
  b.add_layer(1);
  b.add_layer(2);
  for (long long v = 1; v <= 6; ++v) b.add_node(1, v);
  for (long long v = 1; v <= 4; ++v) b.add_node(2, v);
  b.add_edge(1, 1, 2);
  b.add_edge(1, 1, 3);
  b.add_edge(1, 2, 3);
  b.add_edge(1, 4, 5);
  b.add_edge(1, 4, 6);
  b.add_edge(1, 5, 6);
  b.add_edge(2, 1, 2);
  b.add_cross_edge(1, 2, 1, 1);
  b.add_cross_edge(1, 2, 2, 2);
  b.add_cross_edge(1, 2, 3, 3);
  b.add_cross_edge(1, 2, 4, 3);
  b.add_cross_edge(1, 2, 5, 4);
  b.add_cross_edge(1, 2, 6, 4);
  return b.build();
}

struct Dsu {
  std::vector<int> parent;

  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  }

  void unite(int a, int b) { parent[find(a)] = find(b); }

  int components() {
    int count = 0;
    for (int i = 0; i < static_cast<int>(parent.size()); ++i)
      if (find(i) == i) ++count;
    return count;
  }
};

// Connected components of the flattened 1-skeleton, found without any
// incidence matrix.
inline int oracle_component_count(const cmx::CellMultiComplex& x) {
  cmx::FlatComplex flat = cmx::flatten(x);
  Dsu dsu(static_cast<int>(flat.nodes.size()));
  std::map<cmx::CellRef, int> pos;
  for (std::size_t i = 0; i < flat.nodes.size(); ++i)
    pos[flat.nodes[i]] = static_cast<int>(i);
  for (const cmx::CellRef& e : flat.edges) {
    cmx::CellRef tail, head;
    if (e.scope == cmx::Scope::Intra) {
      const cmx::IntraEdge& ie = x.layer(e.layer).edges[static_cast<std::size_t>(e.index)];
      tail = cmx::intra_ref(e.layer, 0, ie.tail);
      head = cmx::intra_ref(e.layer, 0, ie.head);
    } else {
      const cmx::CrossEdge& ce =
          x.find_cross(e.layer, e.other)->edges[static_cast<std::size_t>(e.index)];
      tail = cmx::intra_ref(e.layer, 0, ce.tail);
      head = cmx::intra_ref(e.other, 0, ce.head);
    }
    dsu.unite(pos.at(tail), pos.at(head));
  }
  return dsu.components();
}

inline Eigen::Index oracle_rank(const cmx::IntMatrix& m, double tol = 1e-10) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m.cast<double>());
  lu.setThreshold(tol);
  return lu.rank();
}

// Exact integer product computed entry-by-entry from the sparse triplets.
inline cmx::IntMatrix oracle_integer_product(const cmx::SignedIncidence& a,
                                             const cmx::SignedIncidence& b) {
  std::map<std::pair<Eigen::Index, Eigen::Index>, std::int64_t> left, acc;
  for (const auto& e : a.entries) left[{e.row, e.col}] = e.value;
  for (const auto& eb : b.entries)
    for (const auto& [rc, v] : left)
      if (rc.second == eb.row) acc[{rc.first, eb.col}] += v * eb.value;
  cmx::IntMatrix out = cmx::IntMatrix::Zero(a.row_count(), b.col_count());
  for (const auto& [rc, v] : acc) out(rc.first, rc.second) = v;
  return out;
}

inline bool same_int_matrix(const cmx::IntMatrix& a, const cmx::IntMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a.cwiseEqual(b).all();
}

struct LsParts {
  Eigen::VectorXd gradient, curl, harmonic;
};

// Reference decomposition of a cross-edge signal: stack the gradient image,
// curl image, and an explicit harmonic kernel basis into one design matrix
// and let a rank-revealing least-squares solver split y. The library's
// closed-form estimator must match the parts this produces.
inline LsParts oracle_ls_parts(const cmx::CrossEdgeOps& ops, const Eigen::VectorXd& y) {
  Eigen::MatrixXd b0 = ops.b0.dense();
  Eigen::MatrixXd b1 = ops.b1.dense();
  Eigen::MatrixXd stacked(b0.rows() + b1.cols(), b0.cols());
  stacked.topRows(b0.rows()) = b0;
  stacked.bottomRows(b1.cols()) = b1.transpose();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(stacked);
  lu.setThreshold(1e-10);
  Eigen::MatrixXd kernel = lu.kernel();
  if (lu.dimensionOfKernel() == 0) kernel.resize(b0.cols(), 0);

  Eigen::MatrixXd design(b0.cols(), b0.rows() + b1.cols() + kernel.cols());
  design.leftCols(b0.rows()) = b0.transpose();
  design.middleCols(b0.rows(), b1.cols()) = b1;
  design.rightCols(kernel.cols()) = kernel;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  Eigen::VectorXd z = cod.solve(y);

  LsParts parts;
  parts.gradient = b0.transpose() * z.head(b0.rows());
  parts.curl = b1 * z.segment(b0.rows(), b1.cols());
  parts.harmonic = kernel * z.tail(kernel.cols());
  return parts;
}

// Spearman rank correlation with average ranks on ties.
inline double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i;
      while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
      double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t t = i; t <= j; ++t) r[order[t]] = avg;
      i = j + 1;
    }
    return r;
  };
  std::vector<double> rx = ranks(xs), ry = ranks(ys);
  double n = static_cast<double>(xs.size());
  double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t t = 0; t < rx.size(); ++t) {
    sxy += (rx[t] - mx) * (ry[t] - my);
    sxx += (rx[t] - mx) * (rx[t] - mx);
    syy += (ry[t] - my) * (ry[t] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

} // namespace cmxtest
