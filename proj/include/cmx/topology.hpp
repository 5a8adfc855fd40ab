// Combinatorial topology of a layer pair: enumeration of cones (two
// cross-edge legs meeting at an apex), their closed/open/filled taxonomy,
// per-apex independent cone counts, and harmonic cross-hub ranking.

#pragma once

#include "cmx/cochain.hpp"
#include "cmx/complex.hpp"
#include "cmx/hodge.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmx {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }
  int find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(int a, int b) { parent_[find(a)] = find(b); }

private:
  std::vector<int> parent_;
};

/// Two cross-edge legs sharing an apex vertex. Closed when the endpoints
/// are connected inside the opposite layer, filled when an order-2 cross
/// cell has exactly these legs as its cross-faces.
struct Cone {
  CellRef apex;
  std::array<CellRef, 2> endpoints;
  std::array<CellRef, 2> legs;
  bool closed = false;
  bool filled = false;
};

namespace detail {

struct ConeScan {
  bool apex_on_m = false;
  int apex_layer = 0, opp_layer = 0;
  std::map<int, std::vector<int>> legs_at; ///< apex node pos -> cross-edge indices
  std::set<std::pair<int, int>> filled_pairs; ///< cross-edge index pairs, ordered
};

inline ConeScan scan_cones(const CellMultiComplex& x, int l, int m, int apex_layer) {
  if (apex_layer != l && apex_layer != m)
    throw std::invalid_argument("apex layer must be one of the pair's layers");
  x.layer(l);
  x.layer(m);
  ConeScan scan;
  scan.apex_on_m = apex_layer == m;
  scan.apex_layer = apex_layer;
  scan.opp_layer = scan.apex_on_m ? l : m;
  const CrossComplex* cc = x.find_cross(l, m);
  if (!cc) return scan;
  for (std::size_t i = 0; i < cc->edges.size(); ++i) {
    const CrossEdge& e = cc->edges[i];
    scan.legs_at[scan.apex_on_m ? e.head : e.tail].push_back(static_cast<int>(i));
  }
  const auto* fills = cc->find_class(scan.apex_on_m ? 1 : 0, scan.apex_on_m ? 0 : 1);
  if (fills)
    for (const CrossCell& cell : *fills) {
      std::vector<int> cross_faces;
      for (const SignedFace& f : cell.faces)
        if (f.cell.scope == Scope::Cross) cross_faces.push_back(f.cell.index);
      if (cross_faces.size() == 2)
        scan.filled_pairs.insert({std::min(cross_faces[0], cross_faces[1]),
                                  std::max(cross_faces[0], cross_faces[1])});
    }
  return scan;
}

} // namespace detail

/// All cones of the pair with apexes on apex_layer, apexes in node order
/// and leg pairs in cross-edge order.
inline std::vector<Cone> enumerate_cones(const CellMultiComplex& x, int l, int m, int apex_layer) {
  detail::ConeScan scan = detail::scan_cones(x, l, m, apex_layer);
  const CrossComplex* cc = x.find_cross(l, m);
  std::vector<Cone> cones;
  if (!cc) return cones;

  const Layer& opp = x.layer(scan.opp_layer);
  UnionFind intra(opp.nodes.size());
  for (const IntraEdge& e : opp.edges) intra.unite(e.tail, e.head);

  for (const auto& [apex_pos, legs] : scan.legs_at) {
    if (legs.size() < 2) continue;
    for (std::size_t a = 0; a + 1 < legs.size(); ++a)
      for (std::size_t b = a + 1; b < legs.size(); ++b) {
        int ei = legs[a], ej = legs[b];
        int end_i = scan.apex_on_m ? cc->edges[ei].tail : cc->edges[ei].head;
        int end_j = scan.apex_on_m ? cc->edges[ej].tail : cc->edges[ej].head;
        Cone cone;
        cone.apex = intra_ref(scan.apex_layer, 0, apex_pos);
        cone.endpoints = {intra_ref(scan.opp_layer, 0, end_i), intra_ref(scan.opp_layer, 0, end_j)};
        cone.legs = {cross_ref(l, m, 0, 0, ei), cross_ref(l, m, 0, 0, ej)};
        cone.closed = intra.find(end_i) == intra.find(end_j);
        cone.filled = scan.filled_pairs.count({ei, ej}) > 0;
        cones.push_back(cone);
      }
  }
  return cones;
}

/// Independent unfilled cone count per apex: with d legs at the apex, the
/// cones span a (d-1)-dimensional space, of which the filled ones cover a
/// subspace of rank d minus the number of leg groups they merge. Apexes
/// with fewer than two legs are omitted.
inline std::map<CellRef, int> independent_unfilled_cones(const CellMultiComplex& x, int l, int m,
                                                         int apex_layer) {
  detail::ConeScan scan = detail::scan_cones(x, l, m, apex_layer);
  std::map<CellRef, int> out;
  for (const auto& [apex_pos, legs] : scan.legs_at) {
    if (legs.size() < 2) continue;
    std::map<int, int> local;
    for (std::size_t i = 0; i < legs.size(); ++i) local[legs[i]] = static_cast<int>(i);
    UnionFind uf(legs.size());
    for (const auto& [ei, ej] : scan.filled_pairs) {
      auto it_i = local.find(ei), it_j = local.find(ej);
      if (it_i != local.end() && it_j != local.end()) uf.unite(it_i->second, it_j->second);
    }
    std::set<int> roots;
    for (std::size_t i = 0; i < legs.size(); ++i) roots.insert(uf.find(static_cast<int>(i)));
    out[intra_ref(scan.apex_layer, 0, apex_pos)] = static_cast<int>(roots.size()) - 1;
  }
  return out;
}

inline int total_independent_unfilled(const CellMultiComplex& x, int l, int m, int apex_layer) {
  int total = 0;
  for (const auto& [apex, count] : independent_unfilled_cones(x, l, m, apex_layer)) total += count;
  return total;
}

struct HubScore {
  CellRef node;
  double harmonic_energy = 0.0;  ///< sum of |harmonic| over incident legs
  double divergence_value = 0.0; ///< |div| at the node
  int cone_count = 0;            ///< unfilled cones with this apex
  int closed_cones = 0;          ///< all closed cones with this apex
  int open_cones = 0;            ///< all open cones with this apex
  bool disconnects = false; ///< removal splits previously connected clusters opposite
};

namespace detail {

/// Components among the opposite layer's nodes in the pair's flattened
/// graph (both intra layers plus the cross-edges), optionally with one apex
/// vertex deleted.
inline int opposite_cluster_count(const CellMultiComplex& x, int l, int m, int apex_layer,
                                  int skip_apex_pos) {
  const Layer& Ll = x.layer(l);
  const Layer& Lm = x.layer(m);
  const CrossComplex* cc = x.find_cross(l, m);
  bool apex_on_m = apex_layer == m;
  std::size_t nl = Ll.nodes.size();
  UnionFind uf(nl + Lm.nodes.size());
  auto skip = [&](bool on_m, int pos) {
    return on_m == apex_on_m && pos == skip_apex_pos;
  };
  for (const IntraEdge& e : Ll.edges)
    if (!skip(false, e.tail) && !skip(false, e.head)) uf.unite(e.tail, e.head);
  for (const IntraEdge& e : Lm.edges)
    if (!skip(true, e.tail) && !skip(true, e.head))
      uf.unite(static_cast<int>(nl) + e.tail, static_cast<int>(nl) + e.head);
  if (cc)
    for (const CrossEdge& e : cc->edges)
      if (!skip(false, e.tail) && !skip(true, e.head))
        uf.unite(e.tail, static_cast<int>(nl) + e.head);
  std::set<int> roots;
  if (apex_on_m) {
    for (std::size_t i = 0; i < nl; ++i) roots.insert(uf.find(static_cast<int>(i)));
  } else {
    for (std::size_t i = 0; i < Lm.nodes.size(); ++i)
      roots.insert(uf.find(static_cast<int>(nl + i)));
  }
  return static_cast<int>(roots.size());
}

} // namespace detail

/// Ranks the apexes of unfilled cones by harmonic energy (descending), then
/// |divergence| (descending), then node name. The harmonic cochain lives on
/// the pair's cross-edges, the divergence on the apex layer's vertices; the
/// apex layer is the layer opposite the view.
inline std::vector<HubScore> harmonic_hubs(const CellMultiComplex& x, int l, int m, int view,
                                           const Cochain& harmonic, const Cochain& div) {
  if (view != l && view != m)
    throw std::invalid_argument("view must be one of the pair's layers");
  int apex_layer = view == l ? m : l;
  require_index(harmonic, x.cells_of_class(l, m, 0, 0), "harmonic_hubs");
  require_index(div, x.cells_of_class(apex_layer, -1, 0, -1), "harmonic_hubs divergence");

  std::vector<Cone> cones = enumerate_cones(x, l, m, apex_layer);
  std::map<int, HubScore> by_apex;
  for (const Cone& cone : cones) {
    if (cone.filled) continue;
    HubScore& h = by_apex[cone.apex.index];
    h.node = cone.apex;
    h.cone_count += 1;
  }
  for (const Cone& cone : cones) {
    auto it = by_apex.find(cone.apex.index);
    if (it == by_apex.end()) continue;
    (cone.closed ? it->second.closed_cones : it->second.open_cones) += 1;
  }

  detail::ConeScan scan = detail::scan_cones(x, l, m, apex_layer);
  int base_clusters = detail::opposite_cluster_count(x, l, m, apex_layer, -1);
  std::vector<HubScore> out;
  out.reserve(by_apex.size());
  for (auto& [apex_pos, hub] : by_apex) {
    for (int ei : scan.legs_at[apex_pos]) hub.harmonic_energy += std::abs(harmonic.values(ei));
    hub.divergence_value = std::abs(div.values(apex_pos));
    hub.disconnects =
        detail::opposite_cluster_count(x, l, m, apex_layer, apex_pos) > base_clusters;
    out.push_back(hub);
  }
  std::sort(out.begin(), out.end(), [&](const HubScore& a, const HubScore& b) {
    if (a.harmonic_energy != b.harmonic_energy) return a.harmonic_energy > b.harmonic_energy;
    if (a.divergence_value != b.divergence_value) return a.divergence_value > b.divergence_value;
    return x.node_name(apex_layer, a.node.index) < x.node_name(apex_layer, b.node.index);
  });
  return out;
}

} // namespace cmx
