#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cqec/commands.hpp"
#include "cqec/errors.hpp"
#include "cqec/manifest.hpp"
#include "cqec/validate.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitValidation = 3;

struct CommonOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::int64_t seed = -1;
  int workers = 0;
  int emit_stride = 0;
};

void apply_overrides(cqec::ExperimentPlan& plan, const CommonOptions& opts) {
  if (opts.seed >= 0) {
    plan.master_seed = static_cast<std::uint64_t>(opts.seed);
    for (std::size_t i = 0; i < plan.points.size(); ++i) {
      plan.points[i].seed = cqec::derive_point_seed(plan.master_seed, i,
                                                    plan.points.size());
    }
  }
  for (auto& point : plan.points) {
    if (opts.workers > 0) point.workers = opts.workers;
    if (opts.emit_stride > 0) point.emit_stride = opts.emit_stride;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time syndrome tracking for stabilizer codes"};
  app.set_version_flag("--version", std::string(cqec::kToolVersion));
  app.require_subcommand(1);

  // build-graph
  std::string graph_code;
  std::string graph_out = "graph.csv";
  auto* build = app.add_subcommand(
      "build-graph", "Write the error-state graph of a catalog code");
  build->add_option("code", graph_code, "Code id (bitflip3|five_qubit|toy1)")
      ->required();
  build->add_option("--out", graph_out, "Output CSV path");

  // trajectory / ensemble
  CommonOptions traj_opts, ens_opts;
  auto* trajectory = app.add_subcommand(
      "trajectory", "Simulate one trajectory and write plot-ready CSVs");
  trajectory->add_option("--config", traj_opts.config_path,
                         "Config or manifest JSON")
      ->required();
  trajectory->add_option("--seed", traj_opts.seed, "Master seed override");
  trajectory->add_option("--out-dir", traj_opts.out_dir, "Output directory");
  trajectory->add_option("--emit-stride", traj_opts.emit_stride,
                         "Emission stride override");
  trajectory->add_option("--workers", traj_opts.workers,
                         "Worker count override (unused for one trajectory)");

  auto* ensemble = app.add_subcommand(
      "ensemble", "Run trajectory ensembles and write summary CSVs");
  ensemble->add_option("--config", ens_opts.config_path,
                       "Config or manifest JSON")
      ->required();
  ensemble->add_option("--seed", ens_opts.seed, "Master seed override");
  ensemble->add_option("--out-dir", ens_opts.out_dir, "Output directory");
  ensemble->add_option("--workers", ens_opts.workers,
                       "Worker count override");
  ensemble->add_option("--emit-stride", ens_opts.emit_stride,
                       "Emission stride override");

  // validate
  std::string suite_id;
  std::int64_t validate_seed = -1;
  auto* validate = app.add_subcommand("validate", "Run a validation suite");
  validate
      ->add_option("suite", suite_id,
                   "sme-equivalence|innovations-law|monotonicity|"
                   "graph-structure")
      ->required();
  validate->add_option("--seed", validate_seed, "Suite seed override");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      std::cout << cqec::build_graph_command(graph_code, graph_out);
      std::cout << "wrote " << graph_out << "\n";
      return 0;
    }
    if (trajectory->parsed()) {
      cqec::ExperimentPlan plan = cqec::load_plan(traj_opts.config_path);
      apply_overrides(plan, traj_opts);
      if (plan.points.size() != 1) {
        std::cerr << "trajectory requires a single-point config\n";
        return kExitUsage;
      }
      cqec::trajectory_command(plan.points[0], traj_opts.out_dir);
      std::cout << "wrote trajectory outputs to " << traj_opts.out_dir
                << "\n";
      return 0;
    }
    if (ensemble->parsed()) {
      cqec::ExperimentPlan plan = cqec::load_plan(ens_opts.config_path);
      apply_overrides(plan, ens_opts);
      cqec::ensemble_command(plan.points, plan.master_seed, ens_opts.out_dir);
      std::cout << "wrote " << plan.points.size()
                << " summary file(s) to " << ens_opts.out_dir << "\n";
      return 0;
    }
    if (validate->parsed()) {
      cqec::SuiteResult result =
          validate_seed >= 0
              ? cqec::run_validation_suite(
                    suite_id, static_cast<std::uint64_t>(validate_seed))
              : cqec::run_validation_suite(suite_id);
      std::cout << "suite " << result.suite << "\n" << result.report();
      if (!result.passed()) {
        std::cout << "suite " << result.suite << " FAILED\n";
        return kExitValidation;
      }
      std::cout << "suite " << result.suite << " passed\n";
      return 0;
    }
  } catch (const cqec::NumericalFailure& failure) {
    std::cerr << "numerical failure: " << failure.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& bad_usage) {
    std::cerr << "error: " << bad_usage.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& other) {
    std::cerr << "error: " << other.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
