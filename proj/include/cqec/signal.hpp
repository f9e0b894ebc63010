#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>

#include "cqec/chain.hpp"

namespace cqec {

/// Homodyne measurement record on a uniform grid: increments(k, i) is the
/// observation increment dY of channel i over [k*dt, (k+1)*dt).
struct MeasurementRecord {
  double dt = 0.0;
  Eigen::MatrixXd increments;  // steps x channels

  int steps() const { return static_cast<int>(increments.rows()); }
  int channels() const { return static_cast<int>(increments.cols()); }
  double horizon() const { return dt * steps(); }
};

/// Synthesizes a record from a ground-truth jump path: per step,
/// dY_i = h_i(state) * dt + sqrt(dt) * xi with standard normal xi. The state
/// is taken at the left endpoint of each step, so jumps mid-step take effect
/// at the next grid point. `with_noise = false` drops the Wiener term (test
/// hook).
MeasurementRecord truth_driven_record(const JumpPath& path,
                                      const JumpChain& chain, double dt,
                                      int steps, RngStream& rng,
                                      bool with_noise = true);

/// Synthesizes a record by driving the optimal filter with fresh Wiener
/// innovations: dY_i = dW_i + (h_i . p) dt along the running filter started
/// at p0. Feeding the record back through the same filter reproduces the
/// driving innovations to rounding error.
MeasurementRecord innovations_driven_record(const Eigen::VectorXd& p0,
                                            const JumpChain& chain, double dt,
                                            int steps, RngStream& rng);

std::string record_to_csv(const MeasurementRecord& record);
MeasurementRecord record_from_csv(std::istream& in);

}  // namespace cqec
