#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cqec/chain.hpp"
#include "cqec/codes.hpp"
#include "cqec/wonham.hpp"

namespace cqec {

/// Lumping used for the information bound and the optimal policy:
///  - kPerString mirrors the ratio formula literally on error strings;
///  - kPerClass lumps stabilizer-equivalent strings first, which is the
///    physically correct recovery probability when the code has nontrivial
///    cosets (the modes coincide on the bit-flip and toy chains).
enum class MetricMode { kPerString, kPerClass };

/// Information content of one filter state. `ratios` holds, for every state
/// (or class), its conditional probability given its syndrome; `bound` is
/// the maximum ratio, an upper bound on all future recovery probabilities.
/// Syndromes with zero probability are excluded from the maximum; their
/// ratio entries are NaN and `excluded_syndromes` counts them.
struct InfoSnapshot {
  double t = 0.0;
  double p_star = 0.0;   // max state (or class) probability
  double bound = 0.0;    // max conditional probability given the syndrome
  int argmax = 0;        // state index (kPerString) or class index (kPerClass)
  Eigen::VectorXd ratios;
  Eigen::VectorXd syndrome_probs;
  MetricMode mode = MetricMode::kPerString;
  int excluded_syndromes = 0;
};

InfoSnapshot info_bound(const FilterState& state, const ErrorGraph& graph,
                        MetricMode mode = MetricMode::kPerString);

/// Analytic time derivative of the bound, from the intensity matrix and the
/// snapshot alone:
///   dJ/dt = -sum_{n != m*} rate(n -> m*) (P_n / P_m*) (J - I_n)  <=  0.
/// Requires a per-string snapshot whose chain matches the graph it was
/// computed on. Terms with zero syndrome probability vanish.
double info_bound_derivative(const InfoSnapshot& snapshot,
                             const JumpChain& chain);

/// Discrete-correction strategy: most likely syndrome, corrected with the
/// minimum-weight error string of that syndrome (ties by lowest node index,
/// lowest syndrome index first). `p` lives on the syndrome chain.
PauliString naive_policy(const FilterState& p, const ErrorGraph& extended);

/// Optimal strategy: the error string (or class representative) of the most
/// likely error state under the extended filter. Ties break to the lowest
/// index.
PauliString optimal_policy(const FilterState& p, const ErrorGraph& extended,
                           MetricMode mode = MetricMode::kPerString);

/// True iff correction * truth lies in the stabilizer group, i.e. the
/// correction restores the code space exactly.
bool score_recovery(const PauliString& correction, const PauliString& truth,
                    const StabilizerCode& code);

/// CSV rows `t,p_star,J,argmax,P0..P{S-1}`.
std::string snapshots_to_csv(const std::vector<InfoSnapshot>& snapshots);

}  // namespace cqec
