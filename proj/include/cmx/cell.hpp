// Cell references and canonical textual ids.
//
// Every cell in a multicomplex is addressed by a CellRef: an intra-layer
// cell (layer, order, index) or a cross cell (layer pair l<m, face-order
// class (k,n), index). Indices are 0-based positions in insertion order
// within the class, so ids are stable across rebuilds of the same
// description.

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace cmx {

enum class Scope : std::uint8_t { Intra, Cross };

/// Face-order class (k,n) of a cross cell: faces of order k on the first
/// layer of the pair, order n on the second. -1 marks absence of faces on
/// that layer, so (k,-1) addresses intra cells of order k on the first
/// layer and (-1,n) intra cells of order n on the second.
struct CellClass {
  int k = -1;
  int n = -1;
  friend bool operator==(const CellClass&, const CellClass&) = default;
  friend auto operator<=>(const CellClass&, const CellClass&) = default;
};

/// Dimension of a cross cell of class (k,n), k,n >= 0.
constexpr int cross_order(int k, int n) { return (k > n ? k : n) + 1; }

/// Classes representable in the data model, keyed by cell order.
inline bool is_known_cross_class(int k, int n) {
  if (k == 0 && n == 0) return true;                                  // cross-edges
  if ((k == 1 && n == 0) || (k == 0 && n == 1) || (k == 1 && n == 1)) // order 2
    return true;
  if ((k == 2 && n == 0) || (k == 0 && n == 2) ||                     // order 3
      (k == 2 && n == 1) || (k == 1 && n == 2))
    return true;
  return false;
}

struct CellRef {
  Scope scope = Scope::Intra;
  int layer = 0;  ///< intra layer id, or the lower layer l of a cross pair
  int other = -1; ///< upper layer m of a cross pair; -1 for intra cells
  int order = 0;  ///< cell dimension q
  int k = -1;     ///< cross class; meaningless for intra cells
  int n = -1;
  int index = 0;  ///< 0-based position within the class, insertion order

  friend bool operator==(const CellRef&, const CellRef&) = default;
  friend auto operator<=>(const CellRef& a, const CellRef& b) {
    return std::tie(a.scope, a.layer, a.other, a.k, a.n, a.order, a.index) <=>
           std::tie(b.scope, b.layer, b.other, b.k, b.n, b.order, b.index);
  }
};

inline CellRef intra_ref(int layer, int order, int index) {
  return CellRef{Scope::Intra, layer, -1, order, -1, -1, index};
}

inline CellRef cross_ref(int l, int m, int k, int n, int index) {
  return CellRef{Scope::Cross, l, m, cross_order(k, n), k, n, index};
}

/// Canonical id: intra "L<layer>/k<order>/<index>", cross
/// "X<l>-<m>/c<k>,<n>/<index>".
inline std::string cell_id(const CellRef& c) {
  if (c.scope == Scope::Intra)
    return "L" + std::to_string(c.layer) + "/k" + std::to_string(c.order) +
           "/" + std::to_string(c.index);
  return "X" + std::to_string(c.layer) + "-" + std::to_string(c.other) +
         "/c" + std::to_string(c.k) + "," + std::to_string(c.n) + "/" +
         std::to_string(c.index);
}

namespace detail {

inline bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool neg = s[0] == '-';
  if (neg) i = 1;
  if (i >= s.size()) return false;
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
    if (v > 1'000'000'000LL) return false;
  }
  out = static_cast<int>(neg ? -v : v);
  return true;
}

} // namespace detail

/// Parses a canonical cell id. Returns nullopt on malformed input; existence
/// in a particular complex is checked separately.
inline std::optional<CellRef> parse_cell_id(std::string_view id) {
  auto slash1 = id.find('/');
  auto slash2 = id.rfind('/');
  if (slash1 == std::string_view::npos || slash2 == slash1) return std::nullopt;
  std::string_view head = id.substr(0, slash1);
  std::string_view mid = id.substr(slash1 + 1, slash2 - slash1 - 1);
  std::string_view tail = id.substr(slash2 + 1);
  int index = 0;
  if (!detail::parse_int(tail, index) || index < 0) return std::nullopt;

  if (head.size() > 1 && head[0] == 'L') {
    int layer = 0, order = 0;
    if (!detail::parse_int(head.substr(1), layer)) return std::nullopt;
    if (mid.size() < 2 || mid[0] != 'k') return std::nullopt;
    if (!detail::parse_int(mid.substr(1), order) || order < 0) return std::nullopt;
    return intra_ref(layer, order, index);
  }
  if (head.size() > 1 && head[0] == 'X') {
    auto dash = head.find('-');
    if (dash == std::string_view::npos) return std::nullopt;
    int l = 0, m = 0;
    if (!detail::parse_int(head.substr(1, dash - 1), l)) return std::nullopt;
    if (!detail::parse_int(head.substr(dash + 1), m)) return std::nullopt;
    if (mid.size() < 2 || mid[0] != 'c') return std::nullopt;
    auto comma = mid.find(',');
    if (comma == std::string_view::npos) return std::nullopt;
    int k = 0, n = 0;
    if (!detail::parse_int(mid.substr(1, comma - 1), k)) return std::nullopt;
    if (!detail::parse_int(mid.substr(comma + 1), n)) return std::nullopt;
    if (!is_known_cross_class(k, n)) return std::nullopt;
    return cross_ref(l, m, k, n, index);
  }
  return std::nullopt;
}

/// A face reference together with its incidence sign (+1 coherent, -1 not).
struct SignedFace {
  CellRef cell;
  int sign = 1;
  friend bool operator==(const SignedFace&, const SignedFace&) = default;
};

/// Renders a signed face as "<id>" or "-<id>".
inline std::string signed_id(const SignedFace& f) {
  return f.sign < 0 ? "-" + cell_id(f.cell) : cell_id(f.cell);
}

/// Parses "<id>" or "-<id>" into a signed face reference.
inline std::optional<SignedFace> parse_signed_id(std::string_view token) {
  int sign = 1;
  if (!token.empty() && token[0] == '-') {
    sign = -1;
    token.remove_prefix(1);
  }
  auto ref = parse_cell_id(token);
  if (!ref) return std::nullopt;
  return SignedFace{*ref, sign};
}

} // namespace cmx
