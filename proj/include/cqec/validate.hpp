#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cqec {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;

  bool passed() const;
  std::string report() const;  // one status line per check
};

/// Structural counts of the catalog error graphs: node counts, regular
/// degrees, syndrome and class partitions, and the lumped syndrome-chain
/// intensity pattern.
SuiteResult validate_graph_structure();

/// Propagates the density-matrix equation and the classical filter side by
/// side on shared records with matched renormalization and compares syndrome
/// (and, for the five-qubit code, class) marginals per step.
/// code_id "bitflip3": 8-dim density matrix vs 4-state filter, tolerance
/// 1e-12. code_id "five_qubit": 32-dim density matrix vs the 1024-state
/// filter, plus the 64-state class-lumped filter, tolerance 1e-10.
SuiteResult validate_sme_equivalence(const std::string& code_id,
                                     std::uint64_t seed = 2026);

/// Runs bit-flip trajectories and checks, at every raw step, that the
/// information bound never increases by more than 1e-3 and that the maximum
/// state probability never exceeds the bound.
SuiteResult validate_monotonicity(int trajectories = 100,
                                  std::uint64_t seed = 2026);

/// Two-sample KS tests (1% level) between terminal filter statistics of
/// truth-driven and innovations-driven records on the 8-state chain.
SuiteResult validate_innovations_law(int samples_per_arm = 500,
                                     std::uint64_t seed = 2026);

/// Suite lookup for the CLI: sme-equivalence | innovations-law |
/// monotonicity | graph-structure. Throws std::invalid_argument for unknown
/// ids.
SuiteResult run_validation_suite(const std::string& suite_id,
                                 std::uint64_t seed = 2026);
std::vector<std::string> validation_suite_ids();

}  // namespace cqec
