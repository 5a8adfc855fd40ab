// Signed incidence matrices over {-1, 0, +1} with explicit cell indexing.
// Assembly and chain checks stay in integer arithmetic; dense real views
// are produced on demand for spectral work.

#pragma once

#include "cmx/cell.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cmx {

using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct IncidenceEntry {
  int row = 0;
  int col = 0;
  int value = 0; ///< +1 or -1
};

struct SignedIncidence {
  std::vector<CellRef> rows;
  std::vector<CellRef> cols;
  std::vector<IncidenceEntry> entries; ///< sorted by (col, row)

  Eigen::Index row_count() const { return static_cast<Eigen::Index>(rows.size()); }
  Eigen::Index col_count() const { return static_cast<Eigen::Index>(cols.size()); }

  void sort_entries() {
    std::sort(entries.begin(), entries.end(), [](const IncidenceEntry& a, const IncidenceEntry& b) {
      return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
  }

  IntMatrix dense_int() const {
    IntMatrix m = IntMatrix::Zero(row_count(), col_count());
    for (const auto& e : entries) m(e.row, e.col) += e.value;
    return m;
  }

  Eigen::MatrixXd dense() const { return dense_int().cast<double>(); }
};

/// Exact integer product of two incidence matrices (chain-property checks).
inline IntMatrix integer_product(const SignedIncidence& a, const SignedIncidence& b) {
  if (a.cols.size() != b.rows.size())
    throw std::invalid_argument("integer_product: inner dimensions disagree");
  return a.dense_int() * b.dense_int();
}

inline bool is_zero(const IntMatrix& m) {
  return m.size() == 0 || m.cwiseAbs().maxCoeff() == 0;
}

} // namespace cmx
