#pragma once

#include <Eigen/Dense>
#include <vector>

#include "cqec/chain.hpp"
#include "cqec/signal.hpp"

namespace cqec {

/// Conditional state-probability vector of a jump chain at time t.
struct FilterState {
  Eigen::VectorXd p;
  double t = 0.0;
};

/// Renormalization applied after the Euler-Maruyama update.
///  - kClipRenormalize: clip negative entries to zero, divide by the sum
///    (default; clip events are counted in diagnostics).
///  - kDivideBySum: divide by the sum without clipping; matches the trace
///    renormalization of the density-matrix propagation, so the syndrome
///    projection identity holds at rounding level.
enum class NormPolicy { kClipRenormalize, kDivideBySum };

struct StepDiagnostics {
  long steps = 0;
  long clip_events = 0;
};

/// One Euler-Maruyama step of the optimal filter:
///   p <- p + L^T p dt + sum_i (h_i o p - (h_i.p) p) (dY_i - (h_i.p) dt)
/// followed by the renormalization policy. All terms use the pre-step p.
/// Throws NumericalFailure if the updated vector cannot be renormalized.
void wonham_step_inplace(Eigen::VectorXd& p, const JumpChain& chain,
                         const Eigen::Ref<const Eigen::VectorXd>& dY,
                         double dt,
                         NormPolicy policy = NormPolicy::kClipRenormalize,
                         StepDiagnostics* diagnostics = nullptr,
                         double t = 0.0);

FilterState wonham_step(const FilterState& state, const JumpChain& chain,
                        const Eigen::Ref<const Eigen::VectorXd>& dY,
                        double dt,
                        NormPolicy policy = NormPolicy::kClipRenormalize,
                        StepDiagnostics* diagnostics = nullptr);

/// Time-indexed record of emitted filter states.
struct FilterTrajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  StepDiagnostics diagnostics;

  const Eigen::VectorXd& final_state() const { return states.back(); }
};

/// Applies wonham_step over the full record, emitting the initial state,
/// every stride-th state, and the final state.
FilterTrajectory run_filter(const JumpChain& chain,
                            const Eigen::VectorXd& p0,
                            const MeasurementRecord& record, int emit_stride,
                            NormPolicy policy = NormPolicy::kClipRenormalize);

/// CSV export: full vector per row for dim <= 8, otherwise the top-k entries
/// as index:value pairs.
std::string trajectory_to_csv(const FilterTrajectory& trajectory,
                              int top_k = 8);

}  // namespace cqec
