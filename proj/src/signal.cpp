#include "cqec/signal.hpp"

#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "cqec/wonham.hpp"

namespace cqec {

MeasurementRecord truth_driven_record(const JumpPath& path,
                                      const JumpChain& chain, double dt,
                                      int steps, RngStream& rng,
                                      bool with_noise) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
  if (path.horizon < steps * dt - 1e-12 * dt) {
    throw std::invalid_argument("path horizon shorter than the record");
  }
  int g = chain.channels();
  MeasurementRecord record;
  record.dt = dt;
  record.increments.resize(steps, g);

  double sqrt_dt = std::sqrt(dt);
  size_t next_event = 0;
  int state = path.initial_state;
  for (int k = 0; k < steps; ++k) {
    double t = k * dt;
    while (next_event < path.events.size() &&
           path.events[next_event].time <= t) {
      state = path.events[next_event].new_state;
      ++next_event;
    }
    for (int i = 0; i < g; ++i) {
      double noise = with_noise ? sqrt_dt * rng.next_normal() : 0.0;
      record.increments(k, i) = chain.obs_levels(i, state) * dt + noise;
    }
  }
  return record;
}

MeasurementRecord innovations_driven_record(const Eigen::VectorXd& p0,
                                            const JumpChain& chain, double dt,
                                            int steps, RngStream& rng) {
  if (dt <= 0.0) throw std::invalid_argument("dt must be > 0");
  int g = chain.channels();
  MeasurementRecord record;
  record.dt = dt;
  record.increments.resize(steps, g);

  double sqrt_dt = std::sqrt(dt);
  Eigen::VectorXd p = p0;
  Eigen::VectorXd dY(g);
  for (int k = 0; k < steps; ++k) {
    Eigen::VectorXd h_mean = chain.obs_levels * p;
    for (int i = 0; i < g; ++i) {
      dY[i] = sqrt_dt * rng.next_normal() + h_mean[i] * dt;
      record.increments(k, i) = dY[i];
    }
    wonham_step_inplace(p, chain, dY, dt, NormPolicy::kClipRenormalize,
                        nullptr, k * dt);
  }
  return record;
}

std::string record_to_csv(const MeasurementRecord& record) {
  std::ostringstream out;
  out.precision(17);
  out << "step";
  for (int i = 0; i < record.channels(); ++i) out << ",dY" << i;
  out << "\n# dt=" << record.dt << "\n";
  for (int k = 0; k < record.steps(); ++k) {
    out << k;
    for (int i = 0; i < record.channels(); ++i) {
      out << "," << record.increments(k, i);
    }
    out << "\n";
  }
  return out.str();
}

MeasurementRecord record_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("empty record file");
  }
  int channels = 0;
  for (char c : line) channels += (c == ',');
  if (!std::getline(in, line) || line.rfind("# dt=", 0) != 0) {
    throw std::invalid_argument("missing '# dt=' line in record file");
  }
  double dt = std::stod(line.substr(5));

  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::getline(row, cell, ',');  // step index
    for (int i = 0; i < channels; ++i) {
      if (!std::getline(row, cell, ',')) {
        throw std::invalid_argument("short row in record file");
      }
      values.push_back(std::stod(cell));
    }
  }
  MeasurementRecord record;
  record.dt = dt;
  int steps = static_cast<int>(values.size()) / channels;
  record.increments.resize(steps, channels);
  for (int k = 0; k < steps; ++k) {
    for (int i = 0; i < channels; ++i) {
      record.increments(k, i) = values[k * channels + i];
    }
  }
  return record;
}

}  // namespace cqec
