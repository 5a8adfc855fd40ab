// JSON ingestion and serialization of cell multicomplexes.
//
// Document schema (all arrays may be empty; unknown keys are rejected):
//   {
//     "layers": [ {"id": 1, "nodes": [1,2], "edges": [[1,2]],
//                  "cells2": [["L1/k1/0", "-L1/k1/1", ...]]} ],
//     "cross":  [ {"pair": [1,2], "edges": [[1,1],[2,1]],
//                  "cells2": [{"class":[1,0], "faces":["L1/k1/0", ...]}],
//                  "cells3": [{"class":[2,0], "faces":[...]}]} ]
//   }
// Intra edges and cross-edges list node names; 2- and 3-cell faces are
// signed canonical cell ids ("-" prefix flips the incidence sign).

#pragma once

#include "cmx/complex.hpp"
#include "cmx/io.hpp"

#include <json.hpp>

#include <climits>
#include <initializer_list>
#include <string>
#include <vector>

namespace cmx {

using json = nlohmann::ordered_json;

namespace detail {

inline bool is_int(const json& j) { return j.is_number_integer(); }

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                       const std::string& where, std::vector<ValidationIssue>& issues) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* key : allowed)
      if (item.key() == key) { ok = true; break; }
    if (!ok) issues.push_back({"unknown-key", where, "unknown key '" + item.key() + "'"});
  }
}

inline bool int_pair(const json& j, long long& a, long long& b) {
  if (!j.is_array() || j.size() != 2 || !is_int(j[0]) || !is_int(j[1])) return false;
  a = j[0].get<long long>();
  b = j[1].get<long long>();
  return true;
}

inline bool string_list(const json& j, std::vector<std::string>& out) {
  if (!j.is_array()) return false;
  out.clear();
  for (const auto& e : j) {
    if (!e.is_string()) return false;
    out.push_back(e.get<std::string>());
  }
  return true;
}

} // namespace detail

/// Builds a complex from a parsed document. Schema violations and builder
/// validation failures are reported together in one BuildError.
inline CellMultiComplex parse_cmc(const json& doc) {
  std::vector<ValidationIssue> schema;
  ComplexBuilder b;

  auto bad = [&](const std::string& where, const std::string& msg) {
    schema.push_back({"bad-schema", where, msg});
  };

  if (!doc.is_object()) {
    bad("document", "top level must be a JSON object");
    throw BuildError(schema);
  }
  detail::check_keys(doc, {"layers", "cross"}, "document", schema);

  const json empty_array = json::array();
  const json& layers = doc.contains("layers") ? doc["layers"] : empty_array;
  const json& cross = doc.contains("cross") ? doc["cross"] : empty_array;
  if (!layers.is_array()) bad("layers", "must be an array");
  if (!cross.is_array()) bad("cross", "must be an array");

  std::vector<int> layer_ids;
  if (layers.is_array()) {
    for (const auto& lj : layers) {
      if (!lj.is_object() || !lj.contains("id") || !detail::is_int(lj["id"])) {
        bad("layers", "each layer needs an integer 'id'");
        layer_ids.push_back(INT_MIN);
        continue;
      }
      detail::check_keys(lj, {"id", "nodes", "edges", "cells2"}, "layers", schema);
      int id = lj["id"].get<int>();
      layer_ids.push_back(id);
      b.add_layer(id);
    }

    for (std::size_t i = 0; i < layers.size(); ++i) {
      const json& lj = layers[i];
      int id = layer_ids[i];
      if (id == INT_MIN) continue;
      std::string where = "L" + std::to_string(id);
      if (lj.contains("nodes")) {
        if (!lj["nodes"].is_array()) { bad(where, "'nodes' must be an array of integers"); }
        else
          for (const auto& nj : lj["nodes"]) {
            if (!detail::is_int(nj)) { bad(where, "'nodes' must be an array of integers"); break; }
            b.add_node(id, nj.get<long long>());
          }
      }
      if (lj.contains("edges")) {
        if (!lj["edges"].is_array()) { bad(where, "'edges' must be an array of pairs"); }
        else
          for (const auto& ej : lj["edges"]) {
            long long a = 0, c = 0;
            if (!detail::int_pair(ej, a, c)) { bad(where, "each edge is a [node,node] pair"); continue; }
            b.add_edge(id, a, c);
          }
      }
      if (lj.contains("cells2")) {
        if (!lj["cells2"].is_array()) { bad(where, "'cells2' must be an array of face lists"); }
        else
          for (const auto& cj : lj["cells2"]) {
            std::vector<std::string> faces;
            if (!detail::string_list(cj, faces)) {
              bad(where, "each intra 2-cell is an array of signed cell-id strings");
              continue;
            }
            b.add_intra_cell2(id, faces);
          }
      }
    }
  }

  struct PendingCell {
    int l, m, k, n;
    std::vector<std::string> faces;
  };
  std::vector<PendingCell> cells2, cells3;

  if (cross.is_array()) {
    for (const auto& cj : cross) {
      if (!cj.is_object() || !cj.contains("pair")) {
        bad("cross", "each cross block needs a 'pair' key");
        continue;
      }
      detail::check_keys(cj, {"pair", "edges", "cells2", "cells3"}, "cross", schema);
      long long l = 0, m = 0;
      if (!detail::int_pair(cj["pair"], l, m)) {
        bad("cross", "'pair' must be [l,m]");
        continue;
      }
      std::string where = "X" + std::to_string(l) + "-" + std::to_string(m);
      if (cj.contains("edges")) {
        if (!cj["edges"].is_array()) { bad(where, "'edges' must be an array of pairs"); }
        else
          for (const auto& ej : cj["edges"]) {
            long long a = 0, c = 0;
            if (!detail::int_pair(ej, a, c)) { bad(where, "each cross-edge is [nodeL,nodeM]"); continue; }
            b.add_cross_edge(static_cast<int>(l), static_cast<int>(m), a, c);
          }
      }
      for (const char* key : {"cells2", "cells3"}) {
        if (!cj.contains(key)) continue;
        int want_order = key[5] - '0';
        if (!cj[key].is_array()) { bad(where, std::string("'") + key + "' must be an array"); continue; }
        for (const auto& cell : cj[key]) {
          if (!cell.is_object() || !cell.contains("class") || !cell.contains("faces")) {
            bad(where, std::string("each ") + key + " entry needs 'class' and 'faces'");
            continue;
          }
          detail::check_keys(cell, {"class", "faces"}, where, schema);
          long long k = 0, n = 0;
          std::vector<std::string> faces;
          if (!detail::int_pair(cell["class"], k, n)) { bad(where, "'class' must be [k,n]"); continue; }
          if (!detail::string_list(cell["faces"], faces)) {
            bad(where, "'faces' must be an array of signed cell-id strings");
            continue;
          }
          if (!is_known_cross_class(static_cast<int>(k), static_cast<int>(n)) ||
              cross_order(static_cast<int>(k), static_cast<int>(n)) != want_order) {
            schema.push_back({"bad-class", where + "/c" + std::to_string(k) + "," + std::to_string(n),
                              std::string("not an order-") + std::to_string(want_order) + " class"});
            continue;
          }
          PendingCell p{static_cast<int>(l), static_cast<int>(m),
                        static_cast<int>(k), static_cast<int>(n), std::move(faces)};
          (want_order == 2 ? cells2 : cells3).push_back(std::move(p));
        }
      }
    }
  }
  for (const auto& p : cells2) b.add_cross_cell(p.l, p.m, p.k, p.n, p.faces);
  for (const auto& p : cells3) b.add_cross_cell(p.l, p.m, p.k, p.n, p.faces);

  if (!schema.empty() || !b.issues().empty()) {
    std::vector<ValidationIssue> all = std::move(schema);
    all.insert(all.end(), b.issues().begin(), b.issues().end());
    throw BuildError(std::move(all));
  }
  return b.build();
}

inline json serialize_cmc(const CellMultiComplex& x) {
  json doc = json::object();
  doc["layers"] = json::array();
  for (const Layer& L : x.layers()) {
    json lj = json::object();
    lj["id"] = L.id;
    lj["nodes"] = L.nodes;
    json edges = json::array();
    for (const IntraEdge& e : L.edges)
      edges.push_back(json::array({L.nodes[e.tail], L.nodes[e.head]}));
    lj["edges"] = std::move(edges);
    json cells2 = json::array();
    for (const IntraCell2& c : L.cells2) {
      json faces = json::array();
      for (const SignedFace& f : c.faces) faces.push_back(signed_id(f));
      cells2.push_back(std::move(faces));
    }
    lj["cells2"] = std::move(cells2);
    doc["layers"].push_back(std::move(lj));
  }
  doc["cross"] = json::array();
  for (auto [l, m] : x.pairs()) {
    const CrossComplex& cc = *x.find_cross(l, m);
    json cj = json::object();
    cj["pair"] = json::array({l, m});
    json edges = json::array();
    for (const CrossEdge& e : cc.edges)
      edges.push_back(json::array({x.layer(l).nodes[e.tail], x.layer(m).nodes[e.head]}));
    cj["edges"] = std::move(edges);
    json c2 = json::array(), c3 = json::array();
    for (const auto& [cls, cells] : cc.cells)
      for (const CrossCell& cell : cells) {
        json entry = json::object();
        entry["class"] = json::array({cell.k, cell.n});
        json faces = json::array();
        for (const SignedFace& f : cell.faces) faces.push_back(signed_id(f));
        entry["faces"] = std::move(faces);
        (cross_order(cell.k, cell.n) == 2 ? c2 : c3).push_back(std::move(entry));
      }
    cj["cells2"] = std::move(c2);
    cj["cells3"] = std::move(c3);
    doc["cross"].push_back(std::move(cj));
  }
  return doc;
}

inline std::string cmc_to_string(const CellMultiComplex& x) {
  return serialize_cmc(x).dump(2) + "\n";
}

/// Loads and validates a complex file. Unreadable or non-JSON input raises
/// IoError; schema and semantic problems raise BuildError.
inline CellMultiComplex load_cmc(const std::string& path) {
  std::string text = read_text_file(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
  return parse_cmc(doc);
}

inline void save_cmc(const CellMultiComplex& x, const std::string& path) {
  write_text_file(path, cmc_to_string(x));
}

} // namespace cmx
