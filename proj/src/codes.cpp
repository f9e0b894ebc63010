#include "cqec/codes.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cqec/errors.hpp"

namespace cqec {

namespace {

std::vector<PauliString> close_group(const std::vector<PauliString>& gens,
                                     int n) {
  std::set<std::uint64_t> seen;
  std::vector<PauliString> group{identity_pauli(n)};
  seen.insert(group[0].key());
  // Generators are involutions, so products over all subsets close the group.
  size_t frontier = 0;
  while (frontier < group.size()) {
    PauliString base = group[frontier++];
    for (const auto& g : gens) {
      PauliString p = multiply(base, g);
      if (seen.insert(p.key()).second) group.push_back(p);
    }
  }
  std::sort(group.begin(), group.end(),
            [](const PauliString& a, const PauliString& b) {
              return a.key() < b.key();
            });
  return group;
}

StabilizerCode finalize(StabilizerCode code) {
  for (size_t i = 0; i < code.generators.size(); ++i) {
    for (size_t j = i + 1; j < code.generators.size(); ++j) {
      if (!commutes(code.generators[i], code.generators[j])) {
        throw ConstructionError("code " + code.id +
                                ": generators do not commute");
      }
    }
  }
  for (const auto& c : code.error_channels) {
    if (c.is_identity()) {
      throw ConstructionError("code " + code.id +
                              ": identity cannot carry an error rate");
    }
  }
  code.stabilizer_group = close_group(code.generators, code.n);
  return code;
}

}  // namespace

bool StabilizerCode::in_stabilizer_group(const PauliString& p) const {
  return std::binary_search(
      stabilizer_group.begin(), stabilizer_group.end(), p,
      [](const PauliString& a, const PauliString& b) {
        return a.key() < b.key();
      });
}

StabilizerCode bitflip_code(double gamma, double kappa) {
  StabilizerCode code;
  code.id = "bitflip3";
  code.n = 3;
  code.generators = {parse_pauli("ZZI"), parse_pauli("ZIZ")};
  code.error_channels = {parse_pauli("XII"), parse_pauli("IXI"),
                         parse_pauli("IIX")};
  code.gamma = gamma;
  code.kappa = kappa;
  return finalize(std::move(code));
}

StabilizerCode five_qubit_code(double gamma, double kappa) {
  StabilizerCode code;
  code.id = "five_qubit";
  code.n = 5;
  code.generators = {parse_pauli("XZZXI"), parse_pauli("IXZZX"),
                     parse_pauli("XIXZZ"), parse_pauli("ZXIXZ")};
  for (int q = 0; q < 5; ++q) {
    for (char op : {'X', 'Y', 'Z'}) {
      std::string text(5, 'I');
      text[q] = op;
      code.error_channels.push_back(parse_pauli(text));
    }
  }
  code.gamma = gamma;
  code.kappa = kappa;
  return finalize(std::move(code));
}

StabilizerCode toy_code(double gamma, double kappa) {
  StabilizerCode code;
  code.id = "toy1";
  code.n = 1;
  code.generators = {parse_pauli("Z")};
  code.error_channels = {parse_pauli("X")};
  code.gamma = gamma;
  code.kappa = kappa;
  return finalize(std::move(code));
}

StabilizerCode code_by_id(std::string_view id, double gamma, double kappa) {
  if (id == "bitflip3") return bitflip_code(gamma, kappa);
  if (id == "five_qubit") return five_qubit_code(gamma, kappa);
  if (id == "toy1") return toy_code(gamma, kappa);
  throw std::invalid_argument("unknown code id '" + std::string(id) +
                              "'; known codes: bitflip3, five_qubit, toy1");
}

std::vector<std::string> code_catalog() {
  return {"bitflip3", "five_qubit", "toy1"};
}

int ErrorGraph::node_index(const PauliString& p) const {
  auto it = index_of.find(p.key());
  return it == index_of.end() ? -1 : it->second;
}

ErrorGraph build_error_graph(const StabilizerCode& code) {
  // Closure of the identity under the channels, then sort by (x, z) key.
  std::set<std::uint64_t> seen;
  std::vector<PauliString> frontier{identity_pauli(code.n)};
  std::vector<PauliString> nodes = frontier;
  seen.insert(frontier[0].key());
  while (!frontier.empty()) {
    std::vector<PauliString> next;
    for (const auto& u : frontier) {
      for (const auto& c : code.error_channels) {
        PauliString v = multiply(u, c);
        if (seen.insert(v.key()).second) {
          nodes.push_back(v);
          next.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const PauliString& a, const PauliString& b) {
              return a.key() < b.key();
            });

  ErrorGraph graph;
  graph.nodes = std::move(nodes);
  for (int i = 0; i < graph.size(); ++i) {
    graph.index_of.emplace(graph.nodes[i].key(), i);
  }

  graph.adjacency.resize(graph.size());
  for (int u = 0; u < graph.size(); ++u) {
    for (size_t ch = 0; ch < code.error_channels.size(); ++ch) {
      PauliString v = multiply(graph.nodes[u], code.error_channels[ch]);
      int vi = graph.node_index(v);
      if (vi < 0) {
        throw ConstructionError("error channel leaves the node closure");
      }
      graph.adjacency[u].emplace_back(vi, static_cast<int>(ch));
    }
  }

  graph.num_syndromes = code.num_syndromes();
  graph.syndrome_of.resize(graph.size());
  for (int i = 0; i < graph.size(); ++i) {
    graph.syndrome_of[i] = syndrome_index(graph.nodes[i], code.generators);
  }

  // Logical classes: cosets of the stabilizer group restricted to the node
  // set, labeled in increasing order of their lowest node index.
  graph.class_of.assign(graph.size(), -1);
  for (int i = 0; i < graph.size(); ++i) {
    if (graph.class_of[i] >= 0) continue;
    int cls = graph.num_classes++;
    graph.class_representative.push_back(i);
    for (const auto& s : code.stabilizer_group) {
      int j = graph.node_index(multiply(graph.nodes[i], s));
      if (j >= 0) graph.class_of[j] = cls;
    }
  }
  return graph;
}

ErrorGraph lump_graph(const ErrorGraph& graph, const std::vector<int>& labels,
                      int num_labels) {
  std::vector<int> representative(num_labels, -1);
  for (int i = graph.size() - 1; i >= 0; --i) {
    representative[labels[i]] = i;
  }
  for (int m = 0; m < num_labels; ++m) {
    if (representative[m] < 0) {
      throw ConstructionError("empty lump label " + std::to_string(m));
    }
  }

  // Well-definedness: transition multiplicities into each target label must
  // agree across all members of a label.
  std::vector<std::map<int, int>> counts(num_labels);
  std::vector<bool> initialized(num_labels, false);
  for (int u = 0; u < graph.size(); ++u) {
    std::map<int, int> c;
    for (const auto& [v, ch] : graph.adjacency[u]) ++c[labels[v]];
    int lu = labels[u];
    if (!initialized[lu]) {
      counts[lu] = std::move(c);
      initialized[lu] = true;
    } else if (counts[lu] != c) {
      throw ConstructionError(
          "lumping not well defined: members of label " + std::to_string(lu) +
          " have differing outgoing transition multiplicities");
    }
  }

  ErrorGraph lumped;
  lumped.nodes.reserve(num_labels);
  for (int m = 0; m < num_labels; ++m) {
    lumped.nodes.push_back(graph.nodes[representative[m]]);
  }
  for (int m = 0; m < num_labels; ++m) {
    lumped.index_of.emplace(lumped.nodes[m].key(), m);
  }
  lumped.adjacency.resize(num_labels);
  for (int m = 0; m < num_labels; ++m) {
    int rep = representative[m];
    // Channel label of a lumped edge: the channel of the representative's
    // first edge into that target label.
    std::map<int, int> first_channel;
    for (const auto& [v, ch] : graph.adjacency[rep]) {
      first_channel.emplace(labels[v], ch);
    }
    for (const auto& [target, count] : counts[m]) {
      for (int k = 0; k < count; ++k) {
        lumped.adjacency[m].emplace_back(target, first_channel[target]);
      }
    }
  }
  lumped.num_syndromes = graph.num_syndromes;
  lumped.syndrome_of.resize(num_labels);
  for (int m = 0; m < num_labels; ++m) {
    lumped.syndrome_of[m] = graph.syndrome_of[representative[m]];
  }
  // Lumped states are their own classes.
  lumped.num_classes = num_labels;
  lumped.class_of.resize(num_labels);
  lumped.class_representative.resize(num_labels);
  for (int m = 0; m < num_labels; ++m) {
    lumped.class_of[m] = m;
    lumped.class_representative[m] = m;
  }
  return lumped;
}

ErrorGraph syndrome_chain(const StabilizerCode& code) {
  ErrorGraph extended = build_error_graph(code);
  return lump_graph(extended, extended.syndrome_of, extended.num_syndromes);
}

std::string graph_to_csv(const ErrorGraph& graph) {
  std::ostringstream out;
  std::set<int> degrees;
  for (int i = 0; i < graph.size(); ++i) degrees.insert(graph.degree(i));
  out << "# nodes=" << graph.size();
  out << " degree=";
  bool first = true;
  for (int d : degrees) {
    out << (first ? "" : "/") << d;
    first = false;
  }
  out << " syndromes=" << graph.num_syndromes
      << " classes=" << graph.num_classes << "\n";
  out << "# node_index,node_pauli,syndrome,class,neighbors...\n";
  for (int i = 0; i < graph.size(); ++i) {
    out << i << "," << to_string(graph.nodes[i]) << ","
        << graph.syndrome_of[i] << "," << graph.class_of[i];
    for (const auto& [v, ch] : graph.adjacency[i]) out << "," << v;
    out << "\n";
  }
  return out.str();
}

}  // namespace cqec
