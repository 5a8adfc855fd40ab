#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace cmx;

namespace {

bool has_issue(const BuildError& e, const std::string& code) {
  return std::any_of(e.issues().begin(), e.issues().end(),
                     [&](const ValidationIssue& i) { return i.code == code; });
}

ComplexBuilder two_layer_base() {
  ComplexBuilder b;
  b.add_layer(1).add_layer(2);
  b.add_node(1, 1).add_node(1, 2).add_node(2, 1);
  return b;
}

} // namespace

TEST_CASE("canonical cell ids round-trip") {
  CellRef edge = intra_ref(3, 1, 7);
  CHECK(cell_id(edge) == "L3/k1/7");
  CHECK(parse_cell_id("L3/k1/7") == edge);

  CellRef cross = cross_ref(1, 2, 0, 0, 4);
  CHECK(cell_id(cross) == "X1-2/c0,0/4");
  CHECK(parse_cell_id("X1-2/c0,0/4") == cross);

  CellRef tetra = cross_ref(2, 3, 2, 0, 0);
  CHECK(tetra.order == 3);
  CHECK(cell_id(tetra) == "X2-3/c2,0/0");
  CHECK(parse_cell_id(cell_id(tetra)) == tetra);

  CHECK_FALSE(parse_cell_id("L3/k1").has_value());
  CHECK_FALSE(parse_cell_id("X1-2/c9,9/0").has_value());
  CHECK_FALSE(parse_cell_id("garbage").has_value());
  CHECK_FALSE(parse_cell_id("L3/k1/7 ").has_value());

  auto f = parse_signed_id("-X1-2/c0,0/4");
  REQUIRE(f.has_value());
  CHECK(f->sign == -1);
  CHECK(f->cell == cross);
  CHECK(signed_id(*f) == "-X1-2/c0,0/4");
  CHECK(signed_id(SignedFace{cross, +1}) == "X1-2/c0,0/4");
}

TEST_CASE("cross class order table") {
  CHECK(cross_order(0, 0) == 1);
  for (auto [k, n] : {std::pair{1, 0}, {0, 1}, {1, 1}})
    CHECK(cross_order(k, n) == 2);
  for (auto [k, n] : {std::pair{2, 0}, {0, 2}, {2, 1}, {1, 2}})
    CHECK(cross_order(k, n) == 3);
  CHECK(is_known_cross_class(0, 0));
  CHECK_FALSE(is_known_cross_class(2, 2));
  CHECK_FALSE(is_known_cross_class(-1, 0));
  CHECK_FALSE(is_known_cross_class(3, 0));
}

TEST_CASE("fixture A container queries") {
  CellMultiComplex x = cmxtest::make_fixture_a(false);

  CHECK(x.layer_count() == 2);
  CHECK(x.layer_ids() == std::vector<int>{1, 2});
  REQUIRE(x.pairs().size() == 1);
  CHECK(x.pairs()[0] == std::pair{1, 2});

  CHECK(x.class_count(1, 2, 0, 0) == 2);
  CHECK(x.class_count(1, 2, 1, 0) == 0);

  auto cross_edges = x.cells_of_class(1, 2, 0, 0);
  REQUIRE(cross_edges.size() == 2);
  CHECK(cell_id(cross_edges[0]) == "X1-2/c0,0/0");
  CHECK(cell_id(cross_edges[1]) == "X1-2/c0,0/1");

  auto intra_edges = x.cells_of_class(1, -1, 1, -1);
  REQUIRE(intra_edges.size() == 1);
  CHECK(cell_id(intra_edges[0]) == "L1/k1/0");

  auto m_nodes = x.cells_of_class(1, 2, -1, 0);
  REQUIRE(m_nodes.size() == 1);
  CHECK(m_nodes[0] == intra_ref(2, 0, 0));

  auto l_nodes = x.cells_of_class(1, 2, 0, -1);
  REQUIRE(l_nodes.size() == 2);
  CHECK(l_nodes[0] == intra_ref(1, 0, 0));

  CHECK(x.exists(parse_cell_id("X1-2/c0,0/1").value()));
  CHECK_FALSE(x.exists(parse_cell_id("X1-2/c0,0/2").value()));
  CHECK_FALSE(x.exists(parse_cell_id("L3/k0/0").value()));

  auto bd = x.boundary(cross_ref(1, 2, 0, 0, 0));
  REQUIRE(bd.size() == 2);
  CHECK(bd[0].cell == intra_ref(1, 0, 0));
  CHECK(bd[0].sign == -1);
  CHECK(bd[1].cell == intra_ref(2, 0, 0));
  CHECK(bd[1].sign == 1);

  CHECK(x.node_name(1, 1) == 2);
}

TEST_CASE("intra edges are stored lower name to higher name") {
  ComplexBuilder b;
  b.add_layer(1);
  b.add_node(1, 5).add_node(1, 3);
  b.add_edge(1, 5, 3);
  CellMultiComplex x = b.build();
  const Layer& L = x.layer(1);
  REQUIRE(L.edges.size() == 1);
  CHECK(L.nodes[L.edges[0].tail] == 3);
  CHECK(L.nodes[L.edges[0].head] == 5);
}

TEST_CASE("flatten fixes a global cell order") {
  FlatComplex flat = flatten(cmxtest::make_fixture_a(false));
  CHECK(flat.nodes.size() == 3);
  CHECK(flat.edges.size() == 3);
  CHECK(flat.cells2.empty());
  CHECK(flat.edges[0] == intra_ref(1, 1, 0));
  CHECK(flat.edges[1] == cross_ref(1, 2, 0, 0, 0));

  FlatComplex filled = flatten(cmxtest::make_fixture_a(true));
  REQUIRE(filled.cells2.size() == 1);
  CHECK(filled.cells2[0] == cross_ref(1, 2, 1, 0, 0));
}

TEST_CASE("builder rejects structural mistakes") {
  SECTION("duplicate layer") {
    ComplexBuilder b;
    b.add_layer(1).add_layer(1);
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "duplicate-layer"); }));
  }
  SECTION("unknown layer") {
    ComplexBuilder b;
    b.add_node(4, 1);
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "unknown-layer"); }));
  }
  SECTION("self loop") {
    auto b = two_layer_base();
    b.add_edge(1, 1, 1);
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "self-loop"); }));
  }
  SECTION("duplicate node, edge, cross-edge") {
    auto b = two_layer_base();
    b.add_node(1, 1);
    b.add_edge(1, 1, 2).add_edge(1, 2, 1);
    b.add_cross_edge(1, 2, 1, 1).add_cross_edge(1, 2, 1, 1);
    try {
      b.build();
      FAIL("expected BuildError");
    } catch (const BuildError& e) {
      CHECK(std::count_if(e.issues().begin(), e.issues().end(),
                          [](const ValidationIssue& i) { return i.code == "duplicate-cell"; }) == 3);
    }
  }
  SECTION("edge endpoint missing") {
    auto b = two_layer_base();
    b.add_edge(1, 1, 9);
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "dangling-face"); }));
  }
  SECTION("cross-edge within one layer") {
    auto b = two_layer_base();
    b.add_cross_edge(1, 1, 1, 2);
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "same-layer-cross-edge"); }));
  }
  SECTION("cross pair must be ordered") {
    auto b = two_layer_base();
    b.add_cross_edge(2, 1, 1, 1);
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "bad-pair"); }));
  }
}

TEST_CASE("builder rejects malformed cells") {
  auto base = [] {
    auto b = two_layer_base();
    b.add_edge(1, 1, 2);
    b.add_cross_edge(1, 2, 1, 1).add_cross_edge(1, 2, 2, 1);
    return b;
  };

  SECTION("valid cell passes") {
    auto b = base();
    b.add_cross_cell(1, 2, 1, 0, {"L1/k1/0", "X1-2/c0,0/1", "-X1-2/c0,0/0"});
    CHECK(b.issues().empty());
    CHECK(b.build().class_count(1, 2, 1, 0) == 1);
  }
  SECTION("empty boundary") {
    auto b = base();
    b.add_cross_cell(1, 2, 1, 0, {});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "empty-boundary"); }));
  }
  SECTION("dangling face") {
    auto b = base();
    b.add_cross_cell(1, 2, 1, 0, {"L1/k1/0", "X1-2/c0,0/1", "-X1-2/c0,0/5"});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "dangling-face"); }));
  }
  SECTION("unparseable face token") {
    auto b = base();
    b.add_cross_cell(1, 2, 1, 0, {"L1/k1/0", "what"});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "dangling-face"); }));
  }
  SECTION("duplicate face") {
    auto b = base();
    b.add_cross_cell(1, 2, 1, 0, {"X1-2/c0,0/0", "-X1-2/c0,0/0"});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "duplicate-face"); }));
  }
  SECTION("bad sign") {
    auto b = base();
    b.add_cross_cell_refs(1, 2, 1, 0,
                          {{parse_cell_id("L1/k1/0").value(), 0},
                           {parse_cell_id("X1-2/c0,0/1").value(), 1},
                           {parse_cell_id("X1-2/c0,0/0").value(), -1}});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "bad-sign"); }));
  }
  SECTION("chain violation") {
    auto b = base();
    b.add_cross_cell(1, 2, 1, 0, {"L1/k1/0", "X1-2/c0,0/1", "X1-2/c0,0/0"});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "chain-violation"); }));
  }
  SECTION("class mismatch") {
    auto b = base();
    b.add_cross_cell(1, 2, 1, 1, {"L1/k1/0", "X1-2/c0,0/1", "-X1-2/c0,0/0"});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "class-mismatch"); }));
  }
  SECTION("unknown class") {
    auto b = base();
    b.add_cross_cell(1, 2, 2, 2, {"L1/k1/0"});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "bad-class"); }));
  }
  SECTION("foreign face from another pair") {
    auto b = base();
    b.add_layer(3).add_node(3, 1);
    b.add_cross_edge(2, 3, 1, 1);
    b.add_cross_cell(1, 2, 1, 0, {"L1/k1/0", "X2-3/c0,0/0", "-X1-2/c0,0/0"});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "foreign-face"); }));
  }
  SECTION("intra 2-cell with a cross face") {
    auto b = base();
    b.add_intra_cell2(1, {"L1/k1/0", "X1-2/c0,0/0"});
    CHECK_THROWS_MATCHES(b.build(), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "foreign-face"); }));
  }
}

TEST_CASE("rejected cells do not shift later indices") {
  auto b = two_layer_base();
  b.add_edge(1, 1, 2);
  b.add_cross_edge(1, 2, 1, 1).add_cross_edge(1, 2, 2, 1);
  b.add_cross_cell(1, 2, 1, 0, {"L1/k1/0", "X1-2/c0,0/1", "X1-2/c0,0/0"});
  b.add_cross_cell(1, 2, 1, 0, {"L1/k1/0", "X1-2/c0,0/1", "-X1-2/c0,0/0"});
  CHECK(b.issues().size() == 1);
  CHECK(b.issues()[0].code == "chain-violation");
  CHECK(b.issues()[0].cell == "X1-2/c1,0/0");
}

TEST_CASE("build error summary lists issues") {
  ComplexBuilder b;
  b.add_layer(1).add_layer(1);
  try {
    b.build();
    FAIL("expected BuildError");
  } catch (const BuildError& e) {
    CHECK(std::string(e.what()).find("duplicate-layer") != std::string::npos);
    CHECK(std::string(e.what()).find("L1") != std::string::npos);
  }
}

TEST_CASE("json loading matches programmatic fixtures") {
  auto same_shape = [](const CellMultiComplex& a, const CellMultiComplex& c) {
    return cmc_to_string(a) == cmc_to_string(c);
  };
  CHECK(same_shape(cmxtest::load_fixture("fixtureA.json"), cmxtest::make_fixture_a(false)));
  CHECK(same_shape(cmxtest::load_fixture("fixtureA_filled.json"), cmxtest::make_fixture_a(true)));
  CHECK(same_shape(cmxtest::load_fixture("fixtureC.json"), cmxtest::make_fixture_c()));
  CHECK(same_shape(cmxtest::load_fixture("fixtureD.json"), cmxtest::make_fixture_d()));
}

TEST_CASE("json round-trip is byte stable") {
  for (const char* name : {"fixtureA.json", "fixtureA_filled.json", "fixtureD.json", "showcase.json"}) {
    CellMultiComplex x = cmxtest::load_fixture(name);
    std::string once = cmc_to_string(x);
    std::string twice = cmc_to_string(parse_cmc(json::parse(once)));
    CHECK(once == twice);
  }
}

TEST_CASE("json schema violations are rejected") {
  SECTION("unknown key") {
    json doc = json::parse(R"({"layers": [{"id": 1, "nodez": [1]}], "cross": []})");
    CHECK_THROWS_MATCHES(parse_cmc(doc), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "unknown-key"); }));
  }
  SECTION("top level must be an object") {
    CHECK_THROWS_AS(parse_cmc(json::parse("[1,2]")), BuildError);
  }
  SECTION("class and order must agree") {
    json doc = json::parse(R"({
      "layers": [{"id": 1, "nodes": [1]}, {"id": 2, "nodes": [1]}],
      "cross": [{"pair": [1, 2], "edges": [[1, 1]],
                 "cells2": [{"class": [2, 0], "faces": ["X1-2/c0,0/0"]}]}]
    })");
    CHECK_THROWS_MATCHES(parse_cmc(doc), BuildError,
                         Catch::Matchers::Predicate<BuildError>(
                             [](const BuildError& e) { return has_issue(e, "bad-class"); }));
  }
  SECTION("schema and builder issues arrive together") {
    json doc = json::parse(R"({
      "layers": [{"id": 1, "nodes": [1], "bogus": 3}],
      "cross": [{"pair": [1, 1], "edges": [[1, 1]]}]
    })");
    try {
      parse_cmc(doc);
      FAIL("expected BuildError");
    } catch (const BuildError& e) {
      CHECK(has_issue(e, "unknown-key"));
      CHECK(has_issue(e, "same-layer-cross-edge"));
    }
  }
}

TEST_CASE("broken fixture reports the dangling face") {
  try {
    cmxtest::load_fixture("broken_dangling.json");
    FAIL("expected BuildError");
  } catch (const BuildError& e) {
    REQUIRE(e.issues().size() == 1);
    CHECK(e.issues()[0].code == "dangling-face");
    CHECK(e.issues()[0].cell == "X1-2/c1,0/0");
    CHECK(e.issues()[0].message.find("X1-2/c0,0/5") != std::string::npos);
  }
}

TEST_CASE("non-json input raises IoError") {
  CHECK_THROWS_AS(load_cmc(cmxtest::fixture_path("no_such.json")), IoError);
  std::string scratch = "/tmp/cmx_not_json.txt";
  write_text_file(scratch, "definitely: not json\n");
  CHECK_THROWS_AS(load_cmc(scratch), IoError);
}

TEST_CASE("showcase cross-complex counts") {
  CellMultiComplex x = cmxtest::load_fixture("showcase.json");
  CHECK(x.layer_count() == 3);
  CHECK(x.class_count(1, 2, 0, 0) == 6);
  CHECK(x.class_count(1, 2, 1, 0) == 2);
  CHECK(x.class_count(1, 2, 1, 1) == 1);
  CHECK(x.class_count(2, 3, 0, 0) == 3);
  CHECK(x.class_count(2, 3, 1, 0) == 3);
  CHECK(x.class_count(2, 3, 2, 0) == 1);

  FlatComplex flat = flatten(x);
  CHECK(flat.nodes.size() == 15);
  CHECK(flat.edges.size() == 17);
  CHECK(flat.cells2.size() == 7);
}

TEST_CASE("signal CSV round-trips ids that contain commas") {
  SignalRows rows = {{"L1/k1/0", 1.5},
                     {"X1-2/c0,0/3", -0.25},
                     {"X2-3/c1,1/0", 1e-17}};
  std::string text = signal_csv_text(rows);
  CHECK(text.find("\"X1-2/c0,0/3\"") != std::string::npos);

  SignalRows back = parse_signal_csv(text);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].first == rows[i].first);
    CHECK(back[i].second == rows[i].second);
  }
}

TEST_CASE("signal CSV accepts unquoted cross ids and rejects bad rows") {
  SignalRows rows = parse_signal_csv("cell_id,value\nX1-2/c0,0/7,2.5\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].first == "X1-2/c0,0/7");
  CHECK(rows[0].second == 2.5);

  CHECK_THROWS_AS(parse_signal_csv("wrong,header\n"), IoError);
  CHECK_THROWS_AS(parse_signal_csv("cell_id,value\nL1/k0/0\n"), IoError);
  CHECK_THROWS_AS(parse_signal_csv("cell_id,value\nL1/k0/0,abc\n"), IoError);
  CHECK_THROWS_AS(parse_signal_csv("cell_id,value\n\"L1/k0/0,1.0\n"), IoError);
  CHECK_THROWS_AS(parse_signal_csv(""), IoError);
}

TEST_CASE("quoted ids with embedded quotes survive the csv field escape") {
  std::string field = csv_field("a\"b,c");
  CHECK(field == "\"a\"\"b,c\"");
  SignalRows rows = parse_signal_csv("cell_id,value\n" + field + ",3.0\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].first == "a\"b,c");
}

TEST_CASE("triplet CSV quotes cross ids") {
  std::vector<TripletRow> rows = {{"L2/k0/1", "X1-2/c0,0/0", -1}};
  CHECK(triplet_csv_text(rows) == "row_id,col_id,sign\nL2/k0/1,\"X1-2/c0,0/0\",-1\n");
}
