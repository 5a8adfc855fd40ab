// Real-valued signals indexed by the cells of one class, in the class's
// canonical cell order.

#pragma once

#include "cmx/cell.hpp"
#include "cmx/complex.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace cmx {

struct Cochain {
  std::vector<CellRef> ids;
  Eigen::VectorXd values;

  Cochain() = default;
  Cochain(std::vector<CellRef> ids_, Eigen::VectorXd values_)
      : ids(std::move(ids_)), values(std::move(values_)) {
    if (static_cast<std::size_t>(values.size()) != ids.size())
      throw std::invalid_argument("cochain value count does not match its cell index");
  }

  static Cochain zeros(std::vector<CellRef> ids_) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ids_.size()));
    return Cochain(std::move(ids_), std::move(v));
  }

  Eigen::Index size() const { return values.size(); }
};

/// Zero cochain on class (k,n) of the pair (l,m); -1 addresses intra cells.
inline Cochain zero_cochain(const CellMultiComplex& x, int l, int m, int k, int n) {
  return Cochain::zeros(x.cells_of_class(l, m, k, n));
}

inline void require_same_index(const Cochain& a, const Cochain& b, const char* what) {
  if (a.ids != b.ids)
    throw std::invalid_argument(std::string(what) + ": cochains are indexed by different cells");
}

inline void require_index(const Cochain& s, const std::vector<CellRef>& ids, const char* what) {
  if (s.ids != ids)
    throw std::invalid_argument(std::string(what) + ": cochain index does not match the operator");
}

} // namespace cmx
