#include "cqec/metrics.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cqec {

InfoSnapshot info_bound(const FilterState& state, const ErrorGraph& graph,
                        MetricMode mode) {
  InfoSnapshot snapshot;
  snapshot.t = state.t;
  snapshot.mode = mode;

  const Eigen::VectorXd& p = state.p;
  snapshot.syndrome_probs = Eigen::VectorXd::Zero(graph.num_syndromes);
  for (int m = 0; m < graph.size(); ++m) {
    snapshot.syndrome_probs[graph.syndrome_of[m]] += p[m];
  }

  int groups = mode == MetricMode::kPerString ? graph.size()
                                              : graph.num_classes;
  Eigen::VectorXd group_probs;
  std::vector<int> group_syndrome(groups);
  if (mode == MetricMode::kPerString) {
    group_probs = p;
    group_syndrome = graph.syndrome_of;
  } else {
    group_probs = Eigen::VectorXd::Zero(groups);
    for (int m = 0; m < graph.size(); ++m) {
      group_probs[graph.class_of[m]] += p[m];
    }
    for (int c = 0; c < groups; ++c) {
      group_syndrome[c] = graph.syndrome_of[graph.class_representative[c]];
    }
  }

  snapshot.ratios.resize(groups);
  double nan = std::numeric_limits<double>::quiet_NaN();
  snapshot.bound = -1.0;
  snapshot.argmax = 0;
  snapshot.p_star = 0.0;
  for (int m = 0; m < groups; ++m) {
    double syndrome_prob = snapshot.syndrome_probs[group_syndrome[m]];
    if (syndrome_prob > 0.0) {
      snapshot.ratios[m] = group_probs[m] / syndrome_prob;
      if (snapshot.ratios[m] > snapshot.bound) {
        snapshot.bound = snapshot.ratios[m];
        snapshot.argmax = m;
      }
    } else {
      snapshot.ratios[m] = nan;
    }
    if (group_probs[m] > snapshot.p_star) snapshot.p_star = group_probs[m];
  }
  for (int s = 0; s < graph.num_syndromes; ++s) {
    if (!(snapshot.syndrome_probs[s] > 0.0)) ++snapshot.excluded_syndromes;
  }
  return snapshot;
}

double info_bound_derivative(const InfoSnapshot& snapshot,
                             const JumpChain& chain) {
  if (snapshot.mode != MetricMode::kPerString ||
      snapshot.ratios.size() != chain.dim) {
    throw std::invalid_argument(
        "info_bound_derivative requires a per-string snapshot on the same "
        "chain");
  }
  int target = snapshot.argmax;
  double target_syndrome_prob =
      snapshot.syndrome_probs[chain.syndrome_of[target]];
  if (!(target_syndrome_prob > 0.0)) return 0.0;

  // Transition rates in this artifact are symmetric (error channels are
  // involutions), so the outgoing list of the argmax state also enumerates
  // the incoming rates.
  double derivative = 0.0;
  for (const auto& tr : chain.outgoing[target]) {
    if (tr.target == target) continue;
    double source_prob = snapshot.syndrome_probs[chain.syndrome_of[tr.target]];
    if (!(source_prob > 0.0)) continue;
    derivative -= tr.rate * (source_prob / target_syndrome_prob) *
                  (snapshot.bound - snapshot.ratios[tr.target]);
  }
  return derivative;
}

namespace {

// Minimum-weight (then lowest-index) node of each syndrome.
int syndrome_representative(const ErrorGraph& extended, int syndrome) {
  int best = -1;
  int best_weight = 0;
  for (int m = 0; m < extended.size(); ++m) {
    if (extended.syndrome_of[m] != syndrome) continue;
    int w = extended.nodes[m].weight();
    if (best < 0 || w < best_weight) {
      best = m;
      best_weight = w;
    }
  }
  return best;
}

}  // namespace

PauliString naive_policy(const FilterState& p, const ErrorGraph& extended) {
  int best_syndrome = 0;
  for (int s = 1; s < p.p.size(); ++s) {
    if (p.p[s] > p.p[best_syndrome]) best_syndrome = s;
  }
  int rep = syndrome_representative(extended, best_syndrome);
  if (rep < 0) {
    throw std::invalid_argument("syndrome has no representative in the graph");
  }
  return extended.nodes[rep];
}

PauliString optimal_policy(const FilterState& p, const ErrorGraph& extended,
                           MetricMode mode) {
  if (mode == MetricMode::kPerString) {
    int best = 0;
    for (int m = 1; m < p.p.size(); ++m) {
      if (p.p[m] > p.p[best]) best = m;
    }
    return extended.nodes[best];
  }
  Eigen::VectorXd class_probs = Eigen::VectorXd::Zero(extended.num_classes);
  for (int m = 0; m < extended.size(); ++m) {
    class_probs[extended.class_of[m]] += p.p[m];
  }
  int best = 0;
  for (int c = 1; c < extended.num_classes; ++c) {
    if (class_probs[c] > class_probs[best]) best = c;
  }
  return extended.nodes[extended.class_representative[best]];
}

bool score_recovery(const PauliString& correction, const PauliString& truth,
                    const StabilizerCode& code) {
  return code.in_stabilizer_group(multiply(correction, truth));
}

std::string snapshots_to_csv(const std::vector<InfoSnapshot>& snapshots) {
  std::ostringstream out;
  out.precision(17);
  out << "t,p_star,J,argmax";
  if (!snapshots.empty()) {
    for (int s = 0; s < snapshots[0].syndrome_probs.size(); ++s) {
      out << ",P" << s;
    }
  }
  out << "\n";
  for (const auto& snap : snapshots) {
    out << snap.t << "," << snap.p_star << "," << snap.bound << ","
        << snap.argmax;
    for (int s = 0; s < snap.syndrome_probs.size(); ++s) {
      out << "," << snap.syndrome_probs[s];
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace cqec
