#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "cqec/errors.hpp"
#include "cqec/signal.hpp"
#include "cqec/wonham.hpp"
#include "oracles.hpp"

using cqec::FilterState;
using cqec::JumpChain;
using cqec::MeasurementRecord;
using cqec::NormPolicy;

namespace {

JumpChain bitflip_extended(double gamma, double kappa) {
  cqec::StabilizerCode code = cqec::bitflip_code(gamma, kappa);
  return chain_from_graph(build_error_graph(code), code);
}

JumpChain bitflip_syndrome(double gamma, double kappa) {
  cqec::StabilizerCode code = cqec::bitflip_code(gamma, kappa);
  return chain_from_graph(cqec::syndrome_chain(code), code);
}

}  // namespace

TEST_CASE("vertex is a fixed point without transitions") {
  JumpChain chain = bitflip_extended(0.0, 4.0);
  int m = 5;
  Eigen::VectorXd p = Eigen::VectorXd::Unit(8, m);
  Eigen::VectorXd dY = chain.obs_levels.col(m) * 1e-3;  // noiseless record
  for (int k = 0; k < 100; ++k) {
    cqec::wonham_step_inplace(p, chain, dY, 1e-3);
  }
  CHECK((p - Eigen::VectorXd::Unit(8, m)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("uniform state on the syndrome chain is stationary for dY = 0") {
  JumpChain chain = bitflip_syndrome(1.0, 4.0);
  Eigen::VectorXd p = Eigen::VectorXd::Constant(4, 0.25);
  Eigen::VectorXd dY = Eigen::VectorXd::Zero(2);  // equals h.p dt = 0
  cqec::wonham_step_inplace(p, chain, dY, 1e-3);
  CHECK((p - Eigen::VectorXd::Constant(4, 0.25)).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("one step matches a straight-line reference implementation") {
  double gamma = 1.0, kappa = 40.0, dt = 2.5e-5;
  JumpChain chain = bitflip_syndrome(gamma, kappa);
  Eigen::VectorXd p(4);
  p << 0.7, 0.1, 0.1, 0.1;
  Eigen::VectorXd dY(2);
  dY << 0.013, -0.008;

  std::vector<std::vector<double>> intensity(4, std::vector<double>(4));
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) intensity[m][n] = chain.intensity.coeff(m, n);
  std::vector<std::vector<double>> levels(2, std::vector<double>(4));
  for (int i = 0; i < 2; ++i)
    for (int m = 0; m < 4; ++m) levels[i][m] = chain.obs_levels(i, m);
  std::vector<double> reference = oracle::filter_step_reference(
      {0.7, 0.1, 0.1, 0.1}, intensity, levels, {0.013, -0.008}, dt);

  cqec::wonham_step_inplace(p, chain, dY, dt);
  for (int m = 0; m < 4; ++m) {
    CHECK(std::abs(p[m] - reference[m]) < 1e-14);
  }
}

TEST_CASE("empty record leaves only the initial state") {
  JumpChain chain = bitflip_syndrome(1.0, 1.0);
  MeasurementRecord record;
  record.dt = 1e-3;
  record.increments.resize(0, 2);
  Eigen::VectorXd p0 = Eigen::VectorXd::Constant(4, 0.25);
  cqec::FilterTrajectory trajectory = run_filter(chain, p0, record, 10);
  REQUIRE(trajectory.states.size() == 1);
  CHECK(trajectory.times[0] == 0.0);
  CHECK(trajectory.states[0] == p0);
}

TEST_CASE("high-SNR filter identifies the terminal error state") {
  double gamma = 1.0, kappa = 100.0;
  JumpChain chain = bitflip_extended(gamma, kappa);
  double dt = 1e-3 / kappa;
  int steps = static_cast<int>(std::lround(0.5 / gamma / dt));
  Eigen::VectorXd p0 = Eigen::VectorXd::Unit(8, 0);

  int hits = 0;
  const int trajectories = 200;
  for (int i = 0; i < trajectories; ++i) {
    cqec::RngStream jumps = cqec::make_stream(11, i, cqec::Substream::kJumps);
    cqec::RngStream noise =
        cqec::make_stream(11, i, cqec::Substream::kMeasurementNoise);
    cqec::JumpPath path = sample_jump_path(chain, 0, steps * dt, jumps);
    MeasurementRecord record =
        truth_driven_record(path, chain, dt, steps, noise);
    Eigen::VectorXd p_final = run_filter(chain, p0, record, steps).final_state();
    int argmax = 0;
    for (int m = 1; m < 8; ++m) {
      if (p_final[m] > p_final[argmax]) argmax = m;
    }
    hits += argmax == path.state_at(steps * dt);
  }
  CHECK(hits >= 180);  // >= 90% of 200
}

TEST_CASE("syndrome marginals of the extended filter match the lumped filter") {
  double gamma = 1.0, kappa = 40.0, dt = 2.5e-5;
  cqec::StabilizerCode code = cqec::bitflip_code(gamma, kappa);
  cqec::ErrorGraph graph = build_error_graph(code);
  JumpChain extended = chain_from_graph(graph, code);
  JumpChain lumped = chain_from_graph(cqec::syndrome_chain(code), code);

  cqec::RngStream jumps = cqec::make_stream(12, 0, cqec::Substream::kJumps);
  cqec::RngStream noise =
      cqec::make_stream(12, 0, cqec::Substream::kMeasurementNoise);
  int steps = 2000;
  cqec::JumpPath path = sample_jump_path(extended, 0, steps * dt, jumps);
  MeasurementRecord record =
      truth_driven_record(path, extended, dt, steps, noise);

  Eigen::VectorXd p_ext = Eigen::VectorXd::Unit(8, 0);
  Eigen::VectorXd p_syn = Eigen::VectorXd::Unit(4, 0);
  cqec::StepDiagnostics diagnostics;
  double max_dev = 0.0;
  for (int s = 0; s < steps; ++s) {
    Eigen::VectorXd dY = record.increments.row(s).transpose();
    cqec::wonham_step_inplace(p_ext, extended, dY, dt,
                              NormPolicy::kClipRenormalize, &diagnostics);
    cqec::wonham_step_inplace(p_syn, lumped, dY, dt);
    Eigen::VectorXd marginals = Eigen::VectorXd::Zero(4);
    for (int m = 0; m < 8; ++m) marginals[graph.syndrome_of[m]] += p_ext[m];
    max_dev = std::max(max_dev, (marginals - p_syn).cwiseAbs().maxCoeff());
  }
  CHECK(diagnostics.clip_events == 0);
  CHECK(max_dev <= 1e-10);
}

TEST_CASE("simplex is preserved under adversarial increments") {
  JumpChain chain = bitflip_extended(1.0, 40.0);
  Eigen::VectorXd p = Eigen::VectorXd::Constant(8, 0.125);
  cqec::RngStream rng(13, 0);
  cqec::StepDiagnostics diagnostics;
  double dt = 2.5e-5;
  for (int k = 0; k < 2000; ++k) {
    Eigen::VectorXd dY(2);
    // increments ~30x larger than physical ones
    dY << 0.1 * rng.next_normal(), 0.1 * rng.next_normal();
    cqec::wonham_step_inplace(p, chain, dY, dt,
                              NormPolicy::kClipRenormalize, &diagnostics);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(std::abs(p.sum() - 1.0) <= 1e-12);
  }
  CHECK(diagnostics.clip_events > 0);
}

TEST_CASE("non-finite increments raise a numerical failure") {
  JumpChain chain = bitflip_syndrome(1.0, 1.0);
  Eigen::VectorXd p = Eigen::VectorXd::Constant(4, 0.25);
  Eigen::VectorXd dY(2);
  dY << std::numeric_limits<double>::infinity(), 0.0;
  CHECK_THROWS_AS(cqec::wonham_step_inplace(p, chain, dY, 1e-3),
                  cqec::NumericalFailure);
}

TEST_CASE("vertex attraction in the zero-rate limit") {
  JumpChain chain = bitflip_extended(0.0, 4.0);
  int m = 2;
  Eigen::VectorXd p(8);
  p << 0.02, 0.01, 0.9, 0.02, 0.02, 0.01, 0.01, 0.01;
  Eigen::VectorXd dY = chain.obs_levels.col(m) * 1e-3;  // consistent record
  double previous = (p - Eigen::VectorXd::Unit(8, m)).norm();
  for (int k = 0; k < 1000; ++k) {
    cqec::wonham_step_inplace(p, chain, dY, 1e-3);
    double distance = (p - Eigen::VectorXd::Unit(8, m)).norm();
    CHECK(distance <= previous + 1e-15);
    previous = distance;
  }
}

TEST_CASE("trajectory CSV layouts") {
  JumpChain chain = bitflip_syndrome(1.0, 1.0);
  MeasurementRecord record;
  record.dt = 1e-3;
  record.increments = Eigen::MatrixXd::Zero(5, 2);
  cqec::FilterTrajectory trajectory =
      run_filter(chain, Eigen::VectorXd::Constant(4, 0.25), record, 2);
  std::string csv = cqec::trajectory_to_csv(trajectory);
  CHECK(csv.rfind("t,p0,p1,p2,p3\n", 0) == 0);

  cqec::FilterTrajectory wide;
  wide.times = {0.0};
  Eigen::VectorXd big = Eigen::VectorXd::Zero(1024);
  big[17] = 0.75;
  big[3] = 0.25;
  wide.states = {big};
  std::string wide_csv = cqec::trajectory_to_csv(wide, 2);
  CHECK(wide_csv.rfind("t,index0,p0,index1,p1\n", 0) == 0);
  CHECK(wide_csv.find("0,17,0.75,3,0.25") != std::string::npos);
}
