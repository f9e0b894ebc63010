#include "cqec/wonham.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cqec/errors.hpp"

namespace cqec {

void wonham_step_inplace(Eigen::VectorXd& p, const JumpChain& chain,
                         const Eigen::Ref<const Eigen::VectorXd>& dY,
                         double dt, NormPolicy policy,
                         StepDiagnostics* diagnostics, double t) {
  Eigen::VectorXd h_mean = chain.obs_levels * p;
  Eigen::VectorXd next = p + dt * (chain.intensity.transpose() * p);
  for (int i = 0; i < chain.channels(); ++i) {
    double innovation = dY[i] - h_mean[i] * dt;
    next.noalias() +=
        (chain.obs_levels.row(i).transpose().cwiseProduct(p) - h_mean[i] * p) *
        innovation;
  }

  if (policy == NormPolicy::kClipRenormalize) {
    for (int m = 0; m < next.size(); ++m) {
      if (next[m] < 0.0) {
        next[m] = 0.0;
        if (diagnostics) ++diagnostics->clip_events;
      }
    }
  }
  double total = next.sum();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalFailure(
        "filter step produced a non-normalizable vector (sum=" +
            std::to_string(total) + "); retry with a smaller dt",
        t);
  }
  p = next / total;
  if (diagnostics) ++diagnostics->steps;
}

FilterState wonham_step(const FilterState& state, const JumpChain& chain,
                        const Eigen::Ref<const Eigen::VectorXd>& dY,
                        double dt, NormPolicy policy,
                        StepDiagnostics* diagnostics) {
  FilterState next{state.p, state.t + dt};
  wonham_step_inplace(next.p, chain, dY, dt, policy, diagnostics, state.t);
  return next;
}

FilterTrajectory run_filter(const JumpChain& chain, const Eigen::VectorXd& p0,
                            const MeasurementRecord& record, int emit_stride,
                            NormPolicy policy) {
  FilterTrajectory trajectory;
  trajectory.times.push_back(0.0);
  trajectory.states.push_back(p0);

  Eigen::VectorXd p = p0;
  int steps = record.steps();
  for (int s = 1; s <= steps; ++s) {
    wonham_step_inplace(p, chain, record.increments.row(s - 1).transpose(),
                        record.dt, policy, &trajectory.diagnostics,
                        (s - 1) * record.dt);
    if (s % emit_stride == 0 || s == steps) {
      trajectory.times.push_back(s * record.dt);
      trajectory.states.push_back(p);
    }
  }
  return trajectory;
}

std::string trajectory_to_csv(const FilterTrajectory& trajectory, int top_k) {
  std::ostringstream out;
  out.precision(17);
  if (trajectory.states.empty()) return "";
  int dim = static_cast<int>(trajectory.states[0].size());
  if (dim <= 8) {
    out << "t";
    for (int m = 0; m < dim; ++m) out << ",p" << m;
    out << "\n";
    for (size_t k = 0; k < trajectory.states.size(); ++k) {
      out << trajectory.times[k];
      for (int m = 0; m < dim; ++m) out << "," << trajectory.states[k][m];
      out << "\n";
    }
  } else {
    out << "t";
    for (int j = 0; j < top_k; ++j) out << ",index" << j << ",p" << j;
    out << "\n";
    std::vector<int> order(dim);
    for (size_t k = 0; k < trajectory.states.size(); ++k) {
      const Eigen::VectorXd& p = trajectory.states[k];
      for (int m = 0; m < dim; ++m) order[m] = m;
      std::partial_sort(order.begin(), order.begin() + top_k, order.end(),
                        [&p](int a, int b) {
                          return p[a] != p[b] ? p[a] > p[b] : a < b;
                        });
      out << trajectory.times[k];
      for (int j = 0; j < top_k; ++j) {
        out << "," << order[j] << "," << p[order[j]];
      }
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace cqec
