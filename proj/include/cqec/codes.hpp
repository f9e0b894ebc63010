#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cqec/pauli.hpp"

namespace cqec {

/// Stabilizer code with continuous error channels of rate `gamma` each and
/// syndrome measurement strength `kappa`. The stabilizer group is the closure
/// of the generators and is used for logical-class (coset) structure and
/// recovery scoring.
struct StabilizerCode {
  std::string id;
  int n = 0;
  std::vector<PauliString> generators;
  std::vector<PauliString> error_channels;
  double gamma = 1.0;  // per-channel error rate (1/time)
  double kappa = 1.0;  // measurement strength (1/time)
  std::vector<PauliString> stabilizer_group;  // includes identity

  int num_syndromes() const { return 1 << generators.size(); }
  double total_rate() const { return gamma * error_channels.size(); }
  bool in_stabilizer_group(const PauliString& p) const;
};

/// Three-qubit bit-flip code: generators ZZI, ZIZ; channels XII, IXI, IIX.
StabilizerCode bitflip_code(double gamma = 1.0, double kappa = 1.0);

/// Five-qubit code with the cyclic generators XZZXI, IXZZX, XIXZZ, ZXIXZ and
/// the fifteen single-qubit X/Y/Z channels.
StabilizerCode five_qubit_code(double gamma = 1.0, double kappa = 1.0);

/// Single-qubit chain: generator Z, channel X. Smallest nontrivial case.
StabilizerCode toy_code(double gamma = 1.0, double kappa = 1.0);

/// Catalog lookup by id ("bitflip3" | "five_qubit" | "toy1").
/// Throws std::invalid_argument for unknown ids.
StabilizerCode code_by_id(std::string_view id, double gamma = 1.0,
                          double kappa = 1.0);
std::vector<std::string> code_catalog();

/// Error-state graph. Nodes are the closure of the identity under the code's
/// error channels, indexed lexicographically over (x_bits, z_bits) with the
/// identity at index 0. Adjacency entries are (neighbor, channel) pairs;
/// parallel entries encode summed rates. `class_of` partitions nodes into
/// cosets of the stabilizer group.
struct ErrorGraph {
  std::vector<PauliString> nodes;
  std::vector<std::vector<std::pair<int, int>>> adjacency;
  std::vector<int> syndrome_of;
  std::vector<int> class_of;
  int num_syndromes = 0;
  int num_classes = 0;
  std::vector<int> class_representative;  // node index per class

  int size() const { return static_cast<int>(nodes.size()); }
  int degree(int node) const {
    return static_cast<int>(adjacency[node].size());
  }
  /// Index of a node, or -1 if the string is not a node of this graph.
  int node_index(const PauliString& p) const;

  std::unordered_map<std::uint64_t, int> index_of;
};

/// Extended correction chain: nodes are full error states.
ErrorGraph build_error_graph(const StabilizerCode& code);

/// Lumps a graph by an arbitrary node partition. Requires the lumping to be
/// well defined (all nodes with the same label must have identical transition
/// multiplicities into every other label); throws ConstructionError
/// otherwise. Node m of the result is the lowest-index member of label m.
ErrorGraph lump_graph(const ErrorGraph& graph,
                      const std::vector<int>& labels, int num_labels);

/// Syndrome chain: the extended graph lumped by syndrome.
ErrorGraph syndrome_chain(const StabilizerCode& code);

/// Edge-list export: `node_index,node_pauli,syndrome,class,neighbors...` with
/// a leading stats comment block.
std::string graph_to_csv(const ErrorGraph& graph);

}  // namespace cqec
