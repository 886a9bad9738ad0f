#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torsionlab/adiabatic_torus.hpp"

namespace torsionlab {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitIoOrSchema = 1,
  kExitValidationFailure = 2,
  kExitDimensionCap = 3,
};

/// Batch-run configuration; one JSON document drives all subcommands.
struct RunConfig {
  // validation / identities
  int grid_n = 32;
  double tolerance = 1e-8;
  std::vector<double> u_values{0.25, 1.0, 4.0, 16.0};
  std::vector<double> r_values{0.0, 0.5, 1.0};
  int sample_points = 10;
  // torsion
  int torsion_grid_n = 16;
  std::vector<double> torsion_r_values{0.0};
  bool torsion_dmz7 = false;
  // adiabatic
  ExperimentConfig adiabatic;
  std::uint64_t seed = 0;

  static RunConfig from_json_file(const std::string& path);
  static RunConfig from_json_text(const std::string& text);
};

int cmd_validate(const std::string& spec_path, const RunConfig& cfg, const std::string& out_dir);
int cmd_identities(const std::string& spec_path, const RunConfig& cfg,
                   const std::string& out_dir);
int cmd_torsion(const std::string& spec_path, const RunConfig& cfg, const std::string& out_dir);
int cmd_adiabatic(const std::string& spec_path, const RunConfig& cfg, const std::string& out_dir);

/// Applies TORSIONLAB_THREADS (if set) to the BLAS thread pool.
void apply_thread_cap();

} // namespace torsionlab
