#include "cqec/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cqec/chain.hpp"
#include "cqec/codes.hpp"
#include "cqec/metrics.hpp"
#include "cqec/signal.hpp"
#include "cqec/sme.hpp"
#include "cqec/stats.hpp"
#include "cqec/wonham.hpp"

namespace cqec {

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

std::string SuiteResult::report() const {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "  [PASS] " : "  [FAIL] ") << c.name
        << ": measured=" << c.measured << " tolerance=" << c.tolerance;
    if (!c.note.empty()) out << " (" << c.note << ")";
    out << "\n";
  }
  return out.str();
}

namespace {

void add_count_check(SuiteResult& suite, const std::string& name, long got,
                     long expected) {
  suite.checks.push_back({name, got == expected, static_cast<double>(got),
                          static_cast<double>(expected),
                          "expected exact count"});
}

Eigen::MatrixXcd random_density_matrix(int dim, RngStream& rng) {
  Eigen::MatrixXcd a(dim, dim);
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      a(r, c) = std::complex<double>(rng.next_normal(), rng.next_normal());
    }
  }
  Eigen::MatrixXcd rho = a * a.adjoint();
  return rho / rho.trace().real();
}

// Positive vector on the simplex whose syndrome-group sums match `targets`.
Eigen::VectorXd random_simplex_with_group_sums(
    const std::vector<int>& group_of, const Eigen::VectorXd& targets,
    RngStream& rng) {
  int dim = static_cast<int>(group_of.size());
  Eigen::VectorXd p(dim);
  for (int m = 0; m < dim; ++m) p[m] = -std::log(1.0 - rng.next_double());
  Eigen::VectorXd group_sum = Eigen::VectorXd::Zero(targets.size());
  for (int m = 0; m < dim; ++m) group_sum[group_of[m]] += p[m];
  for (int m = 0; m < dim; ++m) {
    p[m] *= targets[group_of[m]] / group_sum[group_of[m]];
  }
  return p;
}

Eigen::VectorXd lump(const Eigen::VectorXd& p, const std::vector<int>& labels,
                     int num_labels) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(num_labels);
  for (int m = 0; m < p.size(); ++m) out[labels[m]] += p[m];
  return out;
}

}  // namespace

SuiteResult validate_graph_structure() {
  SuiteResult suite{"graph-structure", {}};

  StabilizerCode bitflip = bitflip_code();
  ErrorGraph extended = build_error_graph(bitflip);
  add_count_check(suite, "bitflip3 extended nodes", extended.size(), 8);
  bool degree3 = true;
  for (int m = 0; m < extended.size(); ++m) {
    degree3 &= extended.degree(m) == 3;
  }
  suite.checks.push_back({"bitflip3 uniform degree 3", degree3,
                          degree3 ? 3.0 : -1.0, 3.0, ""});
  std::vector<int> syndrome_sizes(extended.num_syndromes, 0);
  for (int m = 0; m < extended.size(); ++m) {
    ++syndrome_sizes[extended.syndrome_of[m]];
  }
  bool two_each = extended.num_syndromes == 4 &&
                  std::all_of(syndrome_sizes.begin(), syndrome_sizes.end(),
                              [](int c) { return c == 2; });
  suite.checks.push_back(
      {"bitflip3 4 syndromes x 2 states", two_each, two_each ? 2.0 : -1.0,
       2.0, ""});

  ErrorGraph lumped = syndrome_chain(bitflip);
  JumpChain syn = chain_from_graph(lumped, bitflip);
  double max_intensity_error = 0.0;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      double expected = bitflip.gamma * (1.0 - 4.0 * (m == n));
      max_intensity_error = std::max(
          max_intensity_error,
          std::abs(syn.intensity.coeff(m, n) - expected));
    }
  }
  suite.checks.push_back({"bitflip3 syndrome-chain intensity gamma*(1-4*dmn)",
                          max_intensity_error == 0.0, max_intensity_error,
                          0.0, ""});

  StabilizerCode five = five_qubit_code();
  ErrorGraph graph5 = build_error_graph(five);
  add_count_check(suite, "five_qubit nodes", graph5.size(), 1024);
  bool degree15 = true;
  for (int m = 0; m < graph5.size(); ++m) degree15 &= graph5.degree(m) == 15;
  suite.checks.push_back({"five_qubit uniform degree 15", degree15,
                          degree15 ? 15.0 : -1.0, 15.0, ""});
  add_count_check(suite, "five_qubit syndrome count", graph5.num_syndromes,
                  16);
  std::vector<int> syn_sizes(graph5.num_syndromes, 0);
  for (int m = 0; m < graph5.size(); ++m) ++syn_sizes[graph5.syndrome_of[m]];
  bool syn64 = std::all_of(syn_sizes.begin(), syn_sizes.end(),
                           [](int c) { return c == 64; });
  suite.checks.push_back(
      {"five_qubit 16 syndromes x 64 states", syn64, syn64 ? 64.0 : -1.0,
       64.0, ""});
  add_count_check(suite, "five_qubit class count", graph5.num_classes, 64);
  std::vector<int> class_sizes(graph5.num_classes, 0);
  for (int m = 0; m < graph5.size(); ++m) ++class_sizes[graph5.class_of[m]];
  bool class16 = std::all_of(class_sizes.begin(), class_sizes.end(),
                             [](int c) { return c == 16; });
  suite.checks.push_back(
      {"five_qubit 64 classes x 16 strings", class16, class16 ? 16.0 : -1.0,
       16.0, ""});
  // Each syndrome must split into exactly 4 logical classes.
  std::set<std::pair<int, int>> syndrome_class_pairs;
  for (int m = 0; m < graph5.size(); ++m) {
    syndrome_class_pairs.emplace(graph5.syndrome_of[m], graph5.class_of[m]);
  }
  add_count_check(suite, "five_qubit syndrome/class pairs",
                  static_cast<long>(syndrome_class_pairs.size()), 64);

  StabilizerCode toy = toy_code();
  ErrorGraph toy_graph = build_error_graph(toy);
  add_count_check(suite, "toy1 nodes", toy_graph.size(), 2);
  add_count_check(suite, "toy1 syndromes", toy_graph.num_syndromes, 2);
  return suite;
}

SuiteResult validate_sme_equivalence(const std::string& code_id,
                                     std::uint64_t seed) {
  // Shared protocol: kappa/gamma = 40, kappa*dt = 1e-3, truth-driven records.
  double gamma = 1.0;
  double kappa = 40.0;
  double dt = 1e-3 / kappa;
  int records = code_id == "bitflip3" ? 20 : 5;
  int steps = code_id == "bitflip3" ? 200 : 100;
  double tolerance = code_id == "bitflip3" ? 1e-12 : 1e-10;

  StabilizerCode code = code_by_id(code_id, gamma, kappa);
  ErrorGraph graph = build_error_graph(code);
  JumpChain chain = chain_from_graph(graph, code);
  ErrorGraph syn_graph = syndrome_chain(code);
  JumpChain syn_chain = chain_from_graph(syn_graph, code);
  CodeOperators ops = build_code_operators(code);

  SuiteResult suite{"sme-equivalence", {}};
  double max_syndrome_dev = 0.0;
  double max_class_dev = 0.0;
  // Guards against a vacuous pass: the syndrome probabilities must actually
  // move over every record.
  double min_movement = 1.0;

  bool five = code_id == "five_qubit";
  ErrorGraph class_graph;
  JumpChain class_chain;
  if (five) {
    class_graph = lump_graph(graph, graph.class_of, graph.num_classes);
    class_chain = chain_from_graph(class_graph, code);
  }

  for (int r = 0; r < records; ++r) {
    RngStream jump_rng = make_stream(seed, r, Substream::kJumps);
    RngStream noise_rng = make_stream(seed, r, Substream::kMeasurementNoise);
    RngStream init_rng = make_stream(seed, r, Substream::kInitialState);

    JumpPath path = sample_jump_path(chain, 0, steps * dt, jump_rng);
    MeasurementRecord record =
        truth_driven_record(path, chain, dt, steps, noise_rng);

    Eigen::MatrixXcd rho = random_density_matrix(ops.dim, init_rng);
    Eigen::VectorXd rho_syndromes = syndrome_probs(rho, ops);

    Eigen::VectorXd p_syn = rho_syndromes;
    Eigen::VectorXd p_ext, p_class;
    if (five) {
      p_ext = random_simplex_with_group_sums(graph.syndrome_of,
                                             rho_syndromes, init_rng);
      p_class = lump(p_ext, graph.class_of, graph.num_classes);
    }

    double movement = 0.0;
    for (int s = 0; s < steps; ++s) {
      Eigen::VectorXd dY = record.increments.row(s).transpose();
      sme_step_inplace(rho, ops, dY, dt, s * dt);
      Eigen::VectorXd sme_probs = syndrome_probs(rho, ops);
      movement = std::max(movement,
                          (sme_probs - rho_syndromes).cwiseAbs().maxCoeff());
      if (five) {
        wonham_step_inplace(p_ext, chain, dY, dt, NormPolicy::kDivideBySum);
        wonham_step_inplace(p_class, class_chain, dY, dt,
                            NormPolicy::kDivideBySum);
        Eigen::VectorXd ext_syndromes =
            lump(p_ext, graph.syndrome_of, graph.num_syndromes);
        max_syndrome_dev =
            std::max(max_syndrome_dev,
                     (ext_syndromes - sme_probs).cwiseAbs().maxCoeff());
        Eigen::VectorXd ext_classes =
            lump(p_ext, graph.class_of, graph.num_classes);
        max_class_dev = std::max(
            max_class_dev, (ext_classes - p_class).cwiseAbs().maxCoeff());
      } else {
        wonham_step_inplace(p_syn, syn_chain, dY, dt,
                            NormPolicy::kDivideBySum);
        max_syndrome_dev = std::max(
            max_syndrome_dev, (p_syn - sme_probs).cwiseAbs().maxCoeff());
      }
    }
    min_movement = std::min(min_movement, movement);
  }

  suite.checks.push_back({code_id + " syndrome marginals, " +
                              std::to_string(records) + " records x " +
                              std::to_string(steps) + " steps",
                          max_syndrome_dev <= tolerance, max_syndrome_dev,
                          tolerance, "matched renormalization"});
  if (five) {
    suite.checks.push_back({"five_qubit class marginals vs 64-state filter",
                            max_class_dev <= tolerance, max_class_dev,
                            tolerance, "matched renormalization"});
  }
  suite.checks.push_back(
      {code_id + " records drive nontrivial dynamics", min_movement >= 0.02,
       min_movement, 0.02, "minimum syndrome-probability excursion"});
  return suite;
}

SuiteResult validate_monotonicity(int trajectories, std::uint64_t seed) {
  double gamma = 1.0;
  double kappa = 40.0;
  double dt = 1e-3 / kappa;
  double horizon = 2.0 / gamma;
  int steps = static_cast<int>(std::lround(horizon / dt));

  StabilizerCode code = bitflip_code(gamma, kappa);
  ErrorGraph graph = build_error_graph(code);
  JumpChain chain = chain_from_graph(graph, code);

  long increase_violations = 0;
  long dominance_violations = 0;
  double max_increase = 0.0;
  for (int i = 0; i < trajectories; ++i) {
    RngStream jump_rng = make_stream(seed, i, Substream::kJumps);
    RngStream noise_rng = make_stream(seed, i, Substream::kMeasurementNoise);
    JumpPath path = sample_jump_path(chain, 0, horizon, jump_rng);
    MeasurementRecord record =
        truth_driven_record(path, chain, dt, steps, noise_rng);

    Eigen::VectorXd p = Eigen::VectorXd::Zero(chain.dim);
    p[0] = 1.0;
    double previous = 1.0;
    for (int s = 0; s < steps; ++s) {
      wonham_step_inplace(p, chain, record.increments.row(s).transpose(), dt);
      InfoSnapshot snap = info_bound({p, (s + 1) * dt}, graph);
      double change = snap.bound - previous;
      max_increase = std::max(max_increase, change);
      if (change > 1e-3) ++increase_violations;
      if (snap.p_star > snap.bound + 1e-12) ++dominance_violations;
      previous = snap.bound;
    }
  }
  SuiteResult suite{"monotonicity", {}};
  suite.checks.push_back(
      {"bound increases > 1e-3 over " + std::to_string(trajectories) +
           " trajectories",
       increase_violations == 0, static_cast<double>(increase_violations),
       0.0, "max step increase " + std::to_string(max_increase)});
  suite.checks.push_back({"p_star <= bound at every step",
                          dominance_violations == 0,
                          static_cast<double>(dominance_violations), 0.0,
                          ""});
  return suite;
}

SuiteResult validate_innovations_law(int samples_per_arm, std::uint64_t seed) {
  double gamma = 1.0;
  double kappa = 40.0;
  double dt = 1e-3 / kappa;
  double horizon = 1.0 / gamma;
  int steps = static_cast<int>(std::lround(horizon / dt));

  StabilizerCode code = bitflip_code(gamma, kappa);
  ErrorGraph graph = build_error_graph(code);
  JumpChain chain = chain_from_graph(graph, code);

  Eigen::VectorXd p0 = Eigen::VectorXd::Zero(chain.dim);
  p0[0] = 1.0;

  std::vector<double> truth_p0, truth_bound, innov_p0, innov_bound;
  for (int i = 0; i < samples_per_arm; ++i) {
    RngStream jump_rng = make_stream(seed, i, Substream::kJumps);
    RngStream noise_rng = make_stream(seed, i, Substream::kMeasurementNoise);
    JumpPath path = sample_jump_path(chain, 0, horizon, jump_rng);
    MeasurementRecord record =
        truth_driven_record(path, chain, dt, steps, noise_rng);
    FilterTrajectory trajectory = run_filter(chain, p0, record, steps);
    truth_p0.push_back(trajectory.final_state()[0]);
    truth_bound.push_back(
        info_bound({trajectory.final_state(), horizon}, graph).bound);
  }
  for (int i = 0; i < samples_per_arm; ++i) {
    // Distinct trajectory ids keep the innovations arm independent of the
    // truth-driven arm under the same master seed.
    RngStream noise_rng = make_stream(seed, samples_per_arm + i,
                                      Substream::kMeasurementNoise);
    MeasurementRecord record =
        innovations_driven_record(p0, chain, dt, steps, noise_rng);
    FilterTrajectory trajectory = run_filter(chain, p0, record, steps);
    innov_p0.push_back(trajectory.final_state()[0]);
    innov_bound.push_back(
        info_bound({trajectory.final_state(), horizon}, graph).bound);
  }

  double threshold =
      ks_two_sample_threshold(samples_per_arm, samples_per_arm, 0.01);
  double d_p0 = ks_two_sample_statistic(truth_p0, innov_p0);
  double d_bound = ks_two_sample_statistic(truth_bound, innov_bound);

  SuiteResult suite{"innovations-law", {}};
  suite.checks.push_back({"terminal p[0] two-sample KS (1% level)",
                          d_p0 <= threshold, d_p0, threshold,
                          std::to_string(samples_per_arm) + " per arm"});
  suite.checks.push_back({"terminal bound two-sample KS (1% level)",
                          d_bound <= threshold, d_bound, threshold, ""});
  return suite;
}

SuiteResult run_validation_suite(const std::string& suite_id,
                                 std::uint64_t seed) {
  if (suite_id == "graph-structure") return validate_graph_structure();
  if (suite_id == "sme-equivalence") {
    SuiteResult bitflip = validate_sme_equivalence("bitflip3", seed);
    SuiteResult five = validate_sme_equivalence("five_qubit", seed);
    bitflip.checks.insert(bitflip.checks.end(), five.checks.begin(),
                          five.checks.end());
    return bitflip;
  }
  if (suite_id == "monotonicity") return validate_monotonicity(100, seed);
  if (suite_id == "innovations-law") return validate_innovations_law(500, seed);
  throw std::invalid_argument(
      "unknown validation suite '" + suite_id +
      "'; known suites: sme-equivalence, innovations-law, monotonicity, "
      "graph-structure");
}

std::vector<std::string> validation_suite_ids() {
  return {"sme-equivalence", "innovations-law", "monotonicity",
          "graph-structure"};
}

}  // namespace cqec
