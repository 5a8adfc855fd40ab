// Boundary operators: monolayer incidence matrices of the flattened complex
// and the cross-boundary maps of a layer pair, viewed from either layer.
//
// Class bookkeeping mirrors the (k,n) grid. The from-view map of class
// (k,n) sends its cells to class (k-1,n); the toward-view map sends them to
// (k,n-1). A target class with an order below 0 on both layers does not
// exist and yields a matrix with zero rows, as do k = -1 (from view) and
// n = -1 (toward view).

#pragma once

#include "cmx/complex.hpp"
#include "cmx/incidence.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmx {

namespace detail {

inline SignedIncidence assemble_incidence(const CellMultiComplex& x,
                                          std::vector<CellRef> rows,
                                          std::vector<CellRef> cols) {
  SignedIncidence b;
  b.rows = std::move(rows);
  b.cols = std::move(cols);
  std::map<CellRef, int> row_pos;
  for (std::size_t i = 0; i < b.rows.size(); ++i) row_pos[b.rows[i]] = static_cast<int>(i);
  if (!row_pos.empty()) {
    for (std::size_t j = 0; j < b.cols.size(); ++j)
      for (const SignedFace& f : x.boundary(b.cols[j])) {
        auto it = row_pos.find(f.cell);
        if (it != row_pos.end())
          b.entries.push_back({it->second, static_cast<int>(j), f.sign});
      }
  }
  b.sort_entries();
  return b;
}

inline void check_view_class(int k, int n, const char* op) {
  bool ok;
  if (n == -1) ok = (k >= 0 && k <= 2);
  else if (k == -1) ok = (n >= 0 && n <= 2);
  else ok = is_known_cross_class(k, n) && cross_order(k, n) <= 2;
  if (!ok)
    throw std::invalid_argument(std::string(op) + ": unsupported class (" + std::to_string(k) +
                                "," + std::to_string(n) + ")");
}

} // namespace detail

/// Monolayer incidence of the flattened complex. B_1 maps edges to nodes,
/// B_2 maps 2-cells to edges.
inline SignedIncidence monolayer_incidence(const CellMultiComplex& x, int k) {
  if (k != 1 && k != 2) throw std::invalid_argument("monolayer_incidence: k must be 1 or 2");
  FlatComplex flat = flatten(x);
  if (k == 1) return detail::assemble_incidence(x, std::move(flat.nodes), std::move(flat.edges));
  return detail::assemble_incidence(x, std::move(flat.edges), std::move(flat.cells2));
}

/// Cross-boundary of class (k,n) viewed from layer l: rows are the (k-1,n)
/// cells, columns the (k,n) cells. k = -1 gives the stated zero-row map.
inline SignedIncidence cross_boundary_from(const CellMultiComplex& x, int l, int m, int k, int n) {
  detail::check_view_class(k, n, "cross_boundary_from");
  std::vector<CellRef> cols = x.cells_of_class(l, m, k, n);
  std::vector<CellRef> rows;
  if (k >= 0 && !(k - 1 == -1 && n == -1)) rows = x.cells_of_class(l, m, k - 1, n);
  return detail::assemble_incidence(x, std::move(rows), std::move(cols));
}

/// Cross-boundary of class (k,n) viewed toward layer m: rows are the
/// (k,n-1) cells, columns the (k,n) cells. n = -1 gives the zero-row map.
inline SignedIncidence cross_boundary_toward(const CellMultiComplex& x, int l, int m, int k, int n) {
  detail::check_view_class(k, n, "cross_boundary_toward");
  std::vector<CellRef> cols = x.cells_of_class(l, m, k, n);
  std::vector<CellRef> rows;
  if (n >= 0 && !(k == -1 && n - 1 == -1)) rows = x.cells_of_class(l, m, k, n - 1);
  return detail::assemble_incidence(x, std::move(rows), std::move(cols));
}

struct ChainCheck {
  std::string name;
  bool pass = false;
};

struct ChainReport {
  std::vector<ChainCheck> checks;
  bool all_pass = true;
};

/// Verifies that every assembled pair of consecutive boundary maps composes
/// to the exact integer zero matrix, per pair and view, plus the flattened
/// monolayer product.
inline ChainReport verify_chain(const CellMultiComplex& x) {
  ChainReport report;
  auto record = [&](std::string name, const SignedIncidence& a, const SignedIncidence& b) {
    bool pass = is_zero(integer_product(a, b));
    report.all_pass = report.all_pass && pass;
    report.checks.push_back({std::move(name), pass});
  };

  record("B1*B2 (flattened)", monolayer_incidence(x, 1), monolayer_incidence(x, 2));
  for (auto [l, m] : x.pairs()) {
    std::string tag = std::to_string(l) + "," + std::to_string(m);
    record("B00_from*B10_from (" + tag + ")", cross_boundary_from(x, l, m, 0, 0),
           cross_boundary_from(x, l, m, 1, 0));
    record("B01_from*B11_from (" + tag + ")", cross_boundary_from(x, l, m, 0, 1),
           cross_boundary_from(x, l, m, 1, 1));
    record("B00_toward*B01_toward (" + tag + ")", cross_boundary_toward(x, l, m, 0, 0),
           cross_boundary_toward(x, l, m, 0, 1));
    record("B10_toward*B11_toward (" + tag + ")", cross_boundary_toward(x, l, m, 1, 0),
           cross_boundary_toward(x, l, m, 1, 1));
  }
  return report;
}

} // namespace cmx
