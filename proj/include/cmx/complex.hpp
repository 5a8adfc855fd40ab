// Cell multicomplex data model: layered cell complexes joined by
// higher-order cross cells, with validated construction.
//
// A complex is immutable after ComplexBuilder::build(); every query is a
// const read, safe from any number of concurrent callers.
//
// Orientation conventions (fixed so builds are deterministic):
//   - intra edges run from the lower node name to the higher;
//   - cross-edges run from the lower-indexed layer to the higher;
//   - 2-cells are given as a cyclic traversal of signed order-1 faces,
//     sign +1 when the traversal uses a face in its stored direction.

#pragma once

#include "cmx/cell.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace cmx {

struct ValidationIssue {
  std::string code;    ///< stable slug, e.g. "dangling-face"
  std::string cell;    ///< canonical id or offending token
  std::string message;
};

class BuildError : public std::runtime_error {
public:
  explicit BuildError(std::vector<ValidationIssue> issues)
      : std::runtime_error(summary(issues)), issues_(std::move(issues)) {}
  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

private:
  static std::string summary(const std::vector<ValidationIssue>& v) {
    std::ostringstream os;
    os << v.size() << " validation issue" << (v.size() == 1 ? "" : "s");
    if (!v.empty()) os << "; first: [" << v.front().code << "] " << v.front().cell
                       << ": " << v.front().message;
    return os.str();
  }
  std::vector<ValidationIssue> issues_;
};

/// Oriented intra edge, node positions within the owning layer.
struct IntraEdge {
  int tail = 0;
  int head = 0;
};

/// Intra 2-cell: signed cyclic list of the layer's edges.
struct IntraCell2 {
  std::vector<SignedFace> faces;
};

struct Layer {
  int id = 0;
  std::vector<long long> nodes; ///< user-facing node names, insertion order
  std::vector<IntraEdge> edges;
  std::vector<IntraCell2> cells2;

  std::unordered_map<long long, int> node_pos;
  std::map<std::pair<int, int>, int> edge_pos; ///< (tail,head) -> index

  int node_position(long long name) const {
    auto it = node_pos.find(name);
    return it == node_pos.end() ? -1 : it->second;
  }
};

/// Oriented cross-edge: tail on the pair's lower layer, head on the upper.
struct CrossEdge {
  int tail = 0; ///< node position within layer l
  int head = 0; ///< node position within layer m
};

/// Cross cell of order >= 2: face-order class plus a signed face list
/// (order-1 faces for 2-cells, order-2 faces for 3-cells).
struct CrossCell {
  int k = 0;
  int n = 0;
  std::vector<SignedFace> faces;
};

struct CrossComplex {
  int l = 0;
  int m = 0;
  std::vector<CrossEdge> edges; ///< the (0,0) class
  std::map<std::pair<int, int>, int> edge_pos;
  std::map<std::pair<int, int>, std::vector<CrossCell>> cells; ///< by class, order >= 2

  const std::vector<CrossCell>* find_class(int k, int n) const {
    auto it = cells.find({k, n});
    return it == cells.end() ? nullptr : &it->second;
  }
};

class ComplexBuilder;

class CellMultiComplex {
public:
  CellMultiComplex() = default;

  int layer_count() const { return static_cast<int>(layers_.size()); }
  const std::vector<Layer>& layers() const { return layers_; }

  const Layer* find_layer(int id) const {
    auto it = layer_pos_.find(id);
    return it == layer_pos_.end() ? nullptr : &layers_[it->second];
  }
  const Layer& layer(int id) const {
    const Layer* p = find_layer(id);
    if (!p) throw std::invalid_argument("unknown layer " + std::to_string(id));
    return *p;
  }

  /// Layer ids in ascending order; fixes the global cell ordering.
  std::vector<int> layer_ids() const {
    std::vector<int> ids;
    ids.reserve(layers_.size());
    for (const auto& [id, pos] : layer_pos_) ids.push_back(id);
    return ids;
  }

  /// Layer pairs carrying cross content, ascending.
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [key, cc] : cross_) out.push_back(key);
    return out;
  }

  const CrossComplex* find_cross(int l, int m) const {
    auto it = cross_.find({l, m});
    return it == cross_.end() ? nullptr : &it->second;
  }

  /// Number of cells in class (k,n) of the pair (l,m); -1 on either side
  /// addresses the corresponding intra-layer cells.
  std::size_t class_count(int l, int m, int k, int n) const {
    return cells_of_class(l, m, k, n).size();
  }

  /// Ordered cell references of one class. n = -1 selects intra cells of
  /// order k on layer l (m may be -1), k = -1 intra cells of order n on
  /// layer m. Throws on an unknown pair or an all-(-1) class.
  std::vector<CellRef> cells_of_class(int l, int m, int k, int n) const {
    if (k == -1 && n == -1)
      throw std::invalid_argument("class (-1,-1) is not a cell class");
    if (n == -1) {
      const Layer& L = layer(l);
      if (m >= 0) require_pair(l, m);
      return intra_cells(L, k);
    }
    require_pair(l, m);
    if (k == -1) return intra_cells(layer(m), n);
    const CrossComplex* cc = find_cross(l, m);
    std::vector<CellRef> out;
    if (!cc) return out;
    if (k == 0 && n == 0) {
      out.reserve(cc->edges.size());
      for (std::size_t i = 0; i < cc->edges.size(); ++i)
        out.push_back(cross_ref(l, m, 0, 0, static_cast<int>(i)));
      return out;
    }
    if (const auto* cells = cc->find_class(k, n)) {
      out.reserve(cells->size());
      for (std::size_t i = 0; i < cells->size(); ++i)
        out.push_back(cross_ref(l, m, k, n, static_cast<int>(i)));
    }
    return out;
  }

  bool exists(const CellRef& c) const {
    if (c.index < 0) return false;
    if (c.scope == Scope::Intra) {
      const Layer* L = find_layer(c.layer);
      if (!L) return false;
      switch (c.order) {
        case 0: return c.index < static_cast<int>(L->nodes.size());
        case 1: return c.index < static_cast<int>(L->edges.size());
        case 2: return c.index < static_cast<int>(L->cells2.size());
        default: return false;
      }
    }
    const CrossComplex* cc = find_cross(c.layer, c.other);
    if (!cc) return false;
    if (c.k == 0 && c.n == 0) return c.index < static_cast<int>(cc->edges.size());
    const auto* cells = cc->find_class(c.k, c.n);
    return cells && c.index < static_cast<int>(cells->size());
  }

  /// Signed codimension-1 boundary of a cell of order >= 1.
  std::vector<SignedFace> boundary(const CellRef& c) const {
    if (!exists(c)) throw std::invalid_argument("no such cell: " + cell_id(c));
    std::vector<SignedFace> out;
    if (c.scope == Scope::Intra) {
      const Layer& L = layer(c.layer);
      if (c.order == 1) {
        const IntraEdge& e = L.edges[c.index];
        out.push_back({intra_ref(c.layer, 0, e.tail), -1});
        out.push_back({intra_ref(c.layer, 0, e.head), +1});
      } else if (c.order == 2) {
        out = L.cells2[c.index].faces;
      }
      return out;
    }
    const CrossComplex& cc = *find_cross(c.layer, c.other);
    if (c.k == 0 && c.n == 0) {
      const CrossEdge& e = cc.edges[c.index];
      out.push_back({intra_ref(c.layer, 0, e.tail), -1});
      out.push_back({intra_ref(c.other, 0, e.head), +1});
      return out;
    }
    return cc.find_class(c.k, c.n)->at(c.index).faces;
  }

  long long node_name(int layer_id, int pos) const {
    return layer(layer_id).nodes.at(pos);
  }

private:
  friend class ComplexBuilder;

  std::vector<CellRef> intra_cells(const Layer& L, int order) const {
    std::vector<CellRef> out;
    std::size_t count = 0;
    switch (order) {
      case 0: count = L.nodes.size(); break;
      case 1: count = L.edges.size(); break;
      case 2: count = L.cells2.size(); break;
      default: return out;
    }
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      out.push_back(intra_ref(L.id, order, static_cast<int>(i)));
    return out;
  }

  void require_pair(int l, int m) const {
    if (!find_layer(l) || !find_layer(m) || l >= m)
      throw std::invalid_argument("unknown pair (" + std::to_string(l) + "," +
                                  std::to_string(m) + ")");
  }

  std::vector<Layer> layers_;
  std::map<int, int> layer_pos_; ///< layer id -> position in layers_
  std::map<std::pair<int, int>, CrossComplex> cross_;
};

/// Incremental construction with validation. Faces must reference cells
/// already added (descriptions list cells bottom-up). All problems are
/// collected; build() throws BuildError if any were found.
class ComplexBuilder {
public:
  ComplexBuilder& add_layer(int id) {
    if (x_.layer_pos_.count(id)) {
      issue("duplicate-layer", "L" + std::to_string(id), "layer id already present");
      return *this;
    }
    x_.layer_pos_[id] = static_cast<int>(x_.layers_.size());
    Layer L;
    L.id = id;
    x_.layers_.push_back(std::move(L));
    return *this;
  }

  ComplexBuilder& add_node(int layer_id, long long name) {
    Layer* L = mutable_layer(layer_id);
    if (!L) return *this;
    if (L->node_pos.count(name)) {
      issue("duplicate-cell", "L" + std::to_string(layer_id) + " node " + std::to_string(name),
            "node name already present in layer");
      return *this;
    }
    L->node_pos[name] = static_cast<int>(L->nodes.size());
    L->nodes.push_back(name);
    return *this;
  }

  /// Adds the intra edge between two named nodes; stored orientation is
  /// lower name -> higher name regardless of argument order.
  ComplexBuilder& add_edge(int layer_id, long long a, long long b) {
    Layer* L = mutable_layer(layer_id);
    if (!L) return *this;
    if (a == b) {
      issue("self-loop", "L" + std::to_string(layer_id) + " node " + std::to_string(a),
            "self-loops are not representable");
      return *this;
    }
    long long lo = std::min(a, b), hi = std::max(a, b);
    int tail = L->node_position(lo), head = L->node_position(hi);
    if (tail < 0 || head < 0) {
      issue("dangling-face", "L" + std::to_string(layer_id) + " edge " +
            std::to_string(a) + "-" + std::to_string(b), "edge endpoint is not a node of the layer");
      return *this;
    }
    if (L->edge_pos.count({tail, head})) {
      issue("duplicate-cell", "L" + std::to_string(layer_id) + " edge " +
            std::to_string(lo) + "-" + std::to_string(hi), "multi-edges are not representable");
      return *this;
    }
    L->edge_pos[{tail, head}] = static_cast<int>(L->edges.size());
    L->edges.push_back({tail, head});
    return *this;
  }

  ComplexBuilder& add_intra_cell2(int layer_id, const std::vector<std::string>& tokens) {
    auto faces = resolve_faces(tokens);
    if (faces) add_intra_cell2_refs(layer_id, *faces);
    return *this;
  }

  ComplexBuilder& add_intra_cell2_refs(int layer_id, const std::vector<SignedFace>& faces) {
    Layer* L = mutable_layer(layer_id);
    if (!L) return *this;
    CellRef self = intra_ref(layer_id, 2, static_cast<int>(L->cells2.size()));
    if (!check_faces_exist(self, faces)) return *this;
    bool ok = true;
    for (const auto& f : faces)
      if (f.cell.scope != Scope::Intra || f.cell.layer != layer_id || f.cell.order != 1) {
        issue("foreign-face", cell_id(self),
              "face " + cell_id(f.cell) + " is not an edge of layer " + std::to_string(layer_id));
        ok = false;
      }
    if (!ok) return *this;
    if (!check_cell2_chain(self, faces)) return *this;
    L->cells2.push_back({faces});
    return *this;
  }

  ComplexBuilder& add_cross_edge(int l, int m, long long node_l, long long node_m) {
    if (l == m) {
      issue("same-layer-cross-edge", "X" + std::to_string(l) + "-" + std::to_string(m),
            "cross-edge endpoints must lie on two distinct layers");
      return *this;
    }
    if (l > m) {
      issue("bad-pair", "X" + std::to_string(l) + "-" + std::to_string(m),
            "layer pairs are ordered l < m");
      return *this;
    }
    Layer* Ll = mutable_layer(l);
    Layer* Lm = mutable_layer(m);
    if (!Ll || !Lm) return *this;
    int tail = Ll->node_position(node_l), head = Lm->node_position(node_m);
    if (tail < 0 || head < 0) {
      issue("dangling-face", "X" + std::to_string(l) + "-" + std::to_string(m) + " edge " +
            std::to_string(node_l) + "-" + std::to_string(node_m),
            "cross-edge endpoint is not a node of its layer");
      return *this;
    }
    CrossComplex& cc = cross_slot(l, m);
    if (cc.edge_pos.count({tail, head})) {
      issue("duplicate-cell", "X" + std::to_string(l) + "-" + std::to_string(m) + " edge " +
            std::to_string(node_l) + "-" + std::to_string(node_m),
            "cross-edge already present");
      return *this;
    }
    cc.edge_pos[{tail, head}] = static_cast<int>(cc.edges.size());
    cc.edges.push_back({tail, head});
    return *this;
  }

  ComplexBuilder& add_cross_cell(int l, int m, int k, int n,
                                 const std::vector<std::string>& tokens) {
    auto faces = resolve_faces(tokens);
    if (faces) add_cross_cell_refs(l, m, k, n, *faces);
    return *this;
  }

  ComplexBuilder& add_cross_cell_refs(int l, int m, int k, int n,
                                      const std::vector<SignedFace>& faces) {
    if (l >= m || !mutable_layer(l) || !mutable_layer(m)) {
      if (l >= m)
        issue("bad-pair", "X" + std::to_string(l) + "-" + std::to_string(m),
              "layer pairs are ordered l < m");
      return *this;
    }
    if (!is_known_cross_class(k, n) || (k == 0 && n == 0)) {
      issue("bad-class", "X" + std::to_string(l) + "-" + std::to_string(m) + "/c" +
            std::to_string(k) + "," + std::to_string(n),
            "not a representable cross-cell class of order >= 2");
      return *this;
    }
    CrossComplex& cc = cross_slot(l, m);
    auto& bucket = cc.cells[{k, n}];
    CellRef self = cross_ref(l, m, k, n, static_cast<int>(bucket.size()));
    if (!check_faces_exist(self, faces)) { drop_if_empty(cc, k, n); return *this; }

    int order = cross_order(k, n);
    bool ok = true;
    for (const auto& f : faces) {
      bool on_pair = (f.cell.scope == Scope::Intra &&
                      (f.cell.layer == l || f.cell.layer == m)) ||
                     (f.cell.scope == Scope::Cross && f.cell.layer == l && f.cell.other == m);
      if (!on_pair || f.cell.order != order - 1) {
        issue("foreign-face", cell_id(self),
              "face " + cell_id(f.cell) + " is not an order-" + std::to_string(order - 1) +
              " cell of the pair");
        ok = false;
      }
    }
    if (ok && !check_class(self, l, m, k, n, faces)) ok = false;
    if (ok && order == 2 && !check_cell2_chain(self, faces)) ok = false;
    if (ok && order == 3 && !check_cell3_chain(self, faces)) ok = false;
    if (ok) bucket.push_back({k, n, faces});
    drop_if_empty(cc, k, n);
    return *this;
  }

  const std::vector<ValidationIssue>& issues() const { return issues_; }

  /// Finalizes the complex; throws BuildError when any issue was recorded.
  CellMultiComplex build() {
    if (!issues_.empty()) throw BuildError(issues_);
    return std::move(x_);
  }

private:
  void issue(std::string code, std::string cell, std::string message) {
    issues_.push_back({std::move(code), std::move(cell), std::move(message)});
  }

  Layer* mutable_layer(int id) {
    auto it = x_.layer_pos_.find(id);
    if (it == x_.layer_pos_.end()) {
      issue("unknown-layer", "L" + std::to_string(id), "layer is not declared");
      return nullptr;
    }
    return &x_.layers_[it->second];
  }

  CrossComplex& cross_slot(int l, int m) {
    CrossComplex& cc = x_.cross_[{l, m}];
    cc.l = l;
    cc.m = m;
    return cc;
  }

  void drop_if_empty(CrossComplex& cc, int k, int n) {
    auto it = cc.cells.find({k, n});
    if (it != cc.cells.end() && it->second.empty()) cc.cells.erase(it);
  }

  std::optional<std::vector<SignedFace>> resolve_faces(const std::vector<std::string>& tokens) {
    std::vector<SignedFace> out;
    out.reserve(tokens.size());
    bool ok = true;
    for (const auto& t : tokens) {
      auto f = parse_signed_id(t);
      if (!f) {
        issue("dangling-face", t, "not a parseable cell id");
        ok = false;
        continue;
      }
      out.push_back(*f);
    }
    if (!ok) return std::nullopt;
    return out;
  }

  bool check_faces_exist(const CellRef& self, const std::vector<SignedFace>& faces) {
    bool ok = true;
    if (faces.empty()) {
      issue("empty-boundary", cell_id(self), "cell of order >= 2 needs a nonempty boundary");
      return false;
    }
    std::set<CellRef> seen;
    for (const auto& f : faces) {
      if (f.sign != 1 && f.sign != -1) {
        issue("bad-sign", cell_id(self), "face signs must be +1 or -1");
        ok = false;
      }
      if (!x_.exists(f.cell)) {
        issue("dangling-face", cell_id(self), "face " + cell_id(f.cell) + " does not exist");
        ok = false;
        continue;
      }
      if (!seen.insert(f.cell).second) {
        issue("duplicate-face", cell_id(self), "face " + cell_id(f.cell) + " listed twice");
        ok = false;
      }
    }
    return ok;
  }

  /// Local chain condition for a 2-cell: the signed vertex boundaries of its
  /// edges cancel exactly (the traversal closes up).
  bool check_cell2_chain(const CellRef& self, const std::vector<SignedFace>& faces) {
    std::map<CellRef, long long> acc;
    for (const auto& f : faces)
      for (const auto& [v, s] : x_.boundary(f.cell)) acc[v] += static_cast<long long>(f.sign) * s;
    for (const auto& [v, sum] : acc)
      if (sum != 0) {
        issue("chain-violation", cell_id(self),
              "boundary does not close at " + cell_id(v));
        return false;
      }
    return true;
  }

  /// Local chain condition for a 3-cell, one level up: signed edge chains of
  /// its 2-cell faces cancel exactly.
  bool check_cell3_chain(const CellRef& self, const std::vector<SignedFace>& faces) {
    std::map<CellRef, long long> acc;
    for (const auto& f : faces)
      for (const auto& [e, s] : x_.boundary(f.cell)) acc[e] += static_cast<long long>(f.sign) * s;
    for (const auto& [e, sum] : acc)
      if (sum != 0) {
        issue("chain-violation", cell_id(self),
              "face boundaries do not cancel at " + cell_id(e));
        return false;
      }
    return true;
  }

  /// Declared class (k,n) must equal the maximal face order found on each
  /// layer across the face closure.
  bool check_class(const CellRef& self, int l, int m, int k, int n,
                   const std::vector<SignedFace>& faces) {
    int max_l = -1, max_m = -1;
    for (const auto& f : faces) close_over(f.cell, l, m, max_l, max_m);
    if (max_l != k || max_m != n) {
      issue("class-mismatch", cell_id(self),
            "declared class (" + std::to_string(k) + "," + std::to_string(n) +
            ") but faces realize (" + std::to_string(max_l) + "," + std::to_string(max_m) + ")");
      return false;
    }
    return true;
  }

  void close_over(const CellRef& c, int l, int m, int& max_l, int& max_m) {
    if (c.scope == Scope::Intra) {
      if (c.layer == l) max_l = std::max(max_l, c.order);
      if (c.layer == m) max_m = std::max(max_m, c.order);
      if (c.order == 0) return;
    }
    for (const auto& [face, sign] : x_.boundary(c)) close_over(face, l, m, max_l, max_m);
  }

  CellMultiComplex x_;
  std::vector<ValidationIssue> issues_;
};

/// The multicomplex flattened to one monolayer complex: cells of each order
/// in a fixed global order (layers ascending, then cross pairs ascending;
/// insertion order within).
struct FlatComplex {
  std::vector<CellRef> nodes;
  std::vector<CellRef> edges;
  std::vector<CellRef> cells2; ///< intra 2-cells plus order-2 cross cells
};

inline FlatComplex flatten(const CellMultiComplex& x) {
  FlatComplex flat;
  for (int id : x.layer_ids()) {
    const Layer& L = x.layer(id);
    for (std::size_t i = 0; i < L.nodes.size(); ++i)
      flat.nodes.push_back(intra_ref(id, 0, static_cast<int>(i)));
    for (std::size_t i = 0; i < L.edges.size(); ++i)
      flat.edges.push_back(intra_ref(id, 1, static_cast<int>(i)));
    for (std::size_t i = 0; i < L.cells2.size(); ++i)
      flat.cells2.push_back(intra_ref(id, 2, static_cast<int>(i)));
  }
  for (auto [l, m] : x.pairs()) {
    const CrossComplex& cc = *x.find_cross(l, m);
    for (std::size_t i = 0; i < cc.edges.size(); ++i)
      flat.edges.push_back(cross_ref(l, m, 0, 0, static_cast<int>(i)));
    for (const auto& [cls, cells] : cc.cells) {
      if (cross_order(cls.first, cls.second) != 2) continue;
      for (std::size_t i = 0; i < cells.size(); ++i)
        flat.cells2.push_back(cross_ref(l, m, cls.first, cls.second, static_cast<int>(i)));
    }
  }
  return flat;
}

} // namespace cmx
