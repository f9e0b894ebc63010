#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <vector>

#include "cqec/codes.hpp"
#include "cqec/rng.hpp"

namespace cqec {

struct Transition {
  int target;
  int channel;
  double rate;
};

/// Continuous-time Markov jump process on an error-state graph, together with
/// the per-channel observation drift levels.
///
/// intensity(m, n) is the transition rate from state m to state n; rows sum
/// to zero. obs_levels(i, m) = +-2*sqrt(kappa) is the drift of observation
/// channel i in state m; states in the same syndrome share identical columns.
struct JumpChain {
  int dim = 0;
  std::vector<std::vector<Transition>> outgoing;  // per-state neighbor list
  Eigen::VectorXd exit_rate;                      // -intensity(m, m)
  Eigen::SparseMatrix<double> intensity;
  Eigen::MatrixXd obs_levels;  // channels x dim
  std::vector<int> syndrome_of;
  int num_syndromes = 0;

  int channels() const { return static_cast<int>(obs_levels.rows()); }
};

/// Builds the jump chain for a graph: every adjacency entry carries rate
/// gamma, diagonal entries are -degree*gamma, and observation levels are
/// 2*sqrt(kappa) times the syndrome outcome (+1 commuting / -1 anticommuting)
/// of each state under each generator.
JumpChain chain_from_graph(const ErrorGraph& graph,
                           const StabilizerCode& code);

struct JumpEvent {
  double time;
  int channel;
  int new_state;
};

/// One sampled ground-truth error trajectory on [0, horizon].
struct JumpPath {
  int initial_state = 0;
  double horizon = 0.0;
  std::vector<JumpEvent> events;  // strictly increasing times in (0, horizon]

  int state_at(double t) const;
  int terminal_state() const {
    return events.empty() ? initial_state : events.back().new_state;
  }
};

/// Exact CTMC sampling: exponential holding times at the state's exit rate,
/// next state proportional to outgoing rates. Deterministic given the stream.
JumpPath sample_jump_path(const JumpChain& chain, int initial, double horizon,
                          RngStream& rng);

/// CSV rows `time,channel,new_state_index` with a header line.
std::string path_to_csv(const JumpPath& path);

}  // namespace cqec
