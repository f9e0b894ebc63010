#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cqec/codes.hpp"
#include "cqec/errors.hpp"

using cqec::ErrorGraph;
using cqec::PauliString;
using cqec::StabilizerCode;
using cqec::parse_pauli;

TEST_CASE("bit-flip code definition") {
  StabilizerCode code = cqec::bitflip_code(0.5, 7.0);
  CHECK(code.n == 3);
  CHECK(code.generators.size() == 2);
  CHECK(code.error_channels.size() == 3);
  CHECK(code.total_rate() == doctest::Approx(1.5));
  CHECK(commutes(code.generators[0], code.generators[1]));
  CHECK(code.stabilizer_group.size() == 4);
  CHECK(code.in_stabilizer_group(parse_pauli("IZZ")));
  CHECK_FALSE(code.in_stabilizer_group(parse_pauli("XXX")));
}

TEST_CASE("five-qubit code definition") {
  StabilizerCode code = cqec::five_qubit_code();
  CHECK(code.n == 5);
  CHECK(code.generators.size() == 4);
  CHECK(code.error_channels.size() == 15);
  CHECK(code.total_rate() == doctest::Approx(15.0));
  for (size_t i = 0; i < code.generators.size(); ++i) {
    for (size_t j = i + 1; j < code.generators.size(); ++j) {
      CHECK(commutes(code.generators[i], code.generators[j]));
    }
  }
  CHECK(code.stabilizer_group.size() == 16);
}

TEST_CASE("five-qubit code has distance 3") {
  // No Pauli of weight 1 or 2 commutes with all four generators.
  StabilizerCode code = cqec::five_qubit_code();
  for (std::uint32_t x = 0; x < 32; ++x) {
    for (std::uint32_t z = 0; z < 32; ++z) {
      PauliString p{5, x, z};
      if (p.weight() == 0 || p.weight() > 2) continue;
      bool in_normalizer = true;
      for (const auto& g : code.generators) {
        if (!commutes(p, g)) in_normalizer = false;
      }
      CHECK_FALSE(in_normalizer);
    }
  }
}

TEST_CASE("unknown code id") {
  CHECK_THROWS_AS(cqec::code_by_id("steane"), std::invalid_argument);
}

TEST_CASE("bit-flip extended graph") {
  ErrorGraph graph = build_error_graph(cqec::bitflip_code());
  CHECK(graph.size() == 8);
  CHECK(graph.num_syndromes == 4);
  for (int m = 0; m < graph.size(); ++m) {
    CHECK(graph.degree(m) == 3);
    CHECK(graph.nodes[m].z == 0u);  // closure of {I,X}^3
  }
  // Node order follows the (x, z) integer key, identity first.
  CHECK(graph.node_index(parse_pauli("III")) == 0);
  CHECK(graph.node_index(parse_pauli("IIX")) == 1);
  CHECK(graph.node_index(parse_pauli("XII")) == 4);
  CHECK(graph.node_index(parse_pauli("ZII")) == -1);

  std::set<int> neighbors;
  for (const auto& [v, ch] : graph.adjacency[0]) neighbors.insert(v);
  CHECK(neighbors == std::set<int>{graph.node_index(parse_pauli("XII")),
                                   graph.node_index(parse_pauli("IXI")),
                                   graph.node_index(parse_pauli("IIX"))});

  std::vector<int> syndrome_count(4, 0);
  for (int m = 0; m < graph.size(); ++m) ++syndrome_count[graph.syndrome_of[m]];
  for (int c : syndrome_count) CHECK(c == 2);

  // X-type strings multiply into Z-type cosets only trivially, so every
  // node is its own class here.
  CHECK(graph.num_classes == 8);
}

TEST_CASE("extended graph syndrome pairing via the logical flip") {
  ErrorGraph graph = build_error_graph(cqec::bitflip_code());
  PauliString flip = parse_pauli("XXX");
  for (int m = 0; m < graph.size(); ++m) {
    int partner = graph.node_index(multiply(graph.nodes[m], flip));
    CHECK(partner != m);
    CHECK(graph.syndrome_of[partner] == graph.syndrome_of[m]);
    // and nobody else shares the syndrome
    for (int other = 0; other < graph.size(); ++other) {
      if (other != m && other != partner) {
        CHECK(graph.syndrome_of[other] != graph.syndrome_of[m]);
      }
    }
  }
}

TEST_CASE("five-qubit graph structure") {
  ErrorGraph graph = build_error_graph(cqec::five_qubit_code());
  CHECK(graph.size() == 1024);
  CHECK(graph.num_syndromes == 16);
  CHECK(graph.num_classes == 64);
  for (int m = 0; m < graph.size(); ++m) CHECK(graph.degree(m) == 15);

  std::vector<int> syndrome_count(16, 0), class_count(64, 0);
  for (int m = 0; m < graph.size(); ++m) {
    ++syndrome_count[graph.syndrome_of[m]];
    ++class_count[graph.class_of[m]];
  }
  for (int c : syndrome_count) CHECK(c == 64);
  for (int c : class_count) CHECK(c == 16);

  std::set<std::pair<int, int>> pairs;
  for (int m = 0; m < graph.size(); ++m) {
    pairs.emplace(graph.syndrome_of[m], graph.class_of[m]);
  }
  CHECK(pairs.size() == 64);  // 4 classes inside each syndrome
}

TEST_CASE("classes are constant on stabilizer cosets") {
  StabilizerCode code = cqec::five_qubit_code();
  ErrorGraph graph = build_error_graph(code);
  for (int m = 0; m < graph.size(); m += 37) {
    for (const auto& s : code.stabilizer_group) {
      int partner = graph.node_index(multiply(graph.nodes[m], s));
      REQUIRE(partner >= 0);
      CHECK(graph.class_of[partner] == graph.class_of[m]);
    }
  }
}

TEST_CASE("toy chain") {
  ErrorGraph graph = build_error_graph(cqec::toy_code());
  CHECK(graph.size() == 2);
  CHECK(graph.num_syndromes == 2);
  CHECK(graph.degree(0) == 1);
  CHECK(graph.adjacency[0][0].first == 1);

  ErrorGraph lumped = cqec::syndrome_chain(cqec::toy_code());
  CHECK(lumped.size() == 2);
  CHECK(lumped.adjacency == graph.adjacency);
}

TEST_CASE("bit-flip syndrome chain is the complete graph on 4 syndromes") {
  ErrorGraph lumped = cqec::syndrome_chain(cqec::bitflip_code());
  CHECK(lumped.size() == 4);
  for (int m = 0; m < 4; ++m) {
    CHECK(lumped.degree(m) == 3);
    std::set<int> targets;
    for (const auto& [v, ch] : lumped.adjacency[m]) targets.insert(v);
    CHECK(targets.size() == 3);
    CHECK(targets.count(m) == 0);
    CHECK(lumped.syndrome_of[m] == m);
  }
  // Representatives are the minimum-index member of each syndrome.
  CHECK(cqec::to_string(lumped.nodes[0]) == "III");
  CHECK(cqec::to_string(lumped.nodes[1]) == "IXI");
  CHECK(cqec::to_string(lumped.nodes[2]) == "IIX");
  CHECK(cqec::to_string(lumped.nodes[3]) == "IXX");
}

TEST_CASE("ill-defined lumping is rejected") {
  // Path graph 0-1-2: grouping an endpoint with the middle node gives
  // differing multiplicities into the other label.
  ErrorGraph graph;
  graph.nodes = {parse_pauli("I"), parse_pauli("X"), parse_pauli("Y")};
  graph.adjacency = {{{1, 0}}, {{0, 0}, {2, 0}}, {{1, 0}}};
  graph.syndrome_of = {0, 1, 0};
  graph.class_of = {0, 1, 2};
  graph.num_syndromes = 2;
  graph.num_classes = 3;
  graph.class_representative = {0, 1, 2};
  for (int i = 0; i < 3; ++i) graph.index_of.emplace(graph.nodes[i].key(), i);

  CHECK_THROWS_AS(cqec::lump_graph(graph, {0, 0, 1}, 2),
                  cqec::ConstructionError);
  CHECK_NOTHROW(cqec::lump_graph(graph, {0, 1, 0}, 2));
}

TEST_CASE("graph export carries the stats block") {
  std::string csv = cqec::graph_to_csv(build_error_graph(cqec::bitflip_code()));
  CHECK(csv.rfind("# nodes=8 degree=3 syndromes=4 classes=8", 0) == 0);
  CHECK(csv.find("0,III,0,0") != std::string::npos);
}
