#include "cqec/chain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "cqec/errors.hpp"

namespace cqec {

JumpChain chain_from_graph(const ErrorGraph& graph,
                           const StabilizerCode& code) {
  JumpChain chain;
  chain.dim = graph.size();
  chain.num_syndromes = graph.num_syndromes;
  chain.syndrome_of = graph.syndrome_of;

  chain.outgoing.resize(chain.dim);
  chain.exit_rate = Eigen::VectorXd::Zero(chain.dim);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int m = 0; m < chain.dim; ++m) {
    for (const auto& [target, channel] : graph.adjacency[m]) {
      chain.outgoing[m].push_back({target, channel, code.gamma});
      chain.exit_rate[m] += code.gamma;
      triplets.emplace_back(m, target, code.gamma);
    }
    triplets.emplace_back(m, m, -chain.exit_rate[m]);
  }
  chain.intensity.resize(chain.dim, chain.dim);
  chain.intensity.setFromTriplets(triplets.begin(), triplets.end());

  int g = static_cast<int>(code.generators.size());
  chain.obs_levels.resize(g, chain.dim);
  double level = 2.0 * std::sqrt(code.kappa);
  for (int m = 0; m < chain.dim; ++m) {
    for (int i = 0; i < g; ++i) {
      bool anticommutes = (graph.syndrome_of[m] >> i) & 1;
      chain.obs_levels(i, m) = anticommutes ? -level : level;
    }
  }
  return chain;
}

int JumpPath::state_at(double t) const {
  int state = initial_state;
  for (const auto& e : events) {
    if (e.time > t) break;
    state = e.new_state;
  }
  return state;
}

JumpPath sample_jump_path(const JumpChain& chain, int initial, double horizon,
                          RngStream& rng) {
  if (horizon <= 0.0) throw std::invalid_argument("horizon must be > 0");
  if (initial < 0 || initial >= chain.dim) {
    throw std::invalid_argument("initial state out of range");
  }
  JumpPath path;
  path.initial_state = initial;
  path.horizon = horizon;

  int state = initial;
  double t = 0.0;
  for (;;) {
    double exit = chain.exit_rate[state];
    if (exit <= 0.0) break;  // absorbing (e.g. gamma = 0)
    t += rng.next_exponential(exit);
    if (t > horizon) break;
    // Inverse-CDF over the outgoing rate list.
    double u = rng.next_double() * exit;
    double acc = 0.0;
    const auto& out = chain.outgoing[state];
    const Transition* chosen = &out.back();
    for (const auto& tr : out) {
      acc += tr.rate;
      if (u < acc) {
        chosen = &tr;
        break;
      }
    }
    state = chosen->target;
    path.events.push_back({t, chosen->channel, state});
  }
  return path;
}

std::string path_to_csv(const JumpPath& path) {
  std::ostringstream out;
  out.precision(17);
  out << "time,channel,new_state_index\n";
  for (const auto& e : path.events) {
    out << e.time << "," << e.channel << "," << e.new_state << "\n";
  }
  return out.str();
}

}  // namespace cqec
