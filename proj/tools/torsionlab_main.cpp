#include <CLI11.hpp>
#include <iostream>

#include "torsionlab/cli_reports.hpp"

int main(int argc, char** argv) {
  torsionlab::apply_thread_cap();

  CLI::App app{"torsionlab: torsion forms and adiabatic spectral verification "
               "for flat cochain complexes over flat tori"};
  app.require_subcommand(1);

  std::string spec_path, config_path, out_dir = ".";
  std::uint64_t seed_override = 0;
  bool seed_given = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--spec", spec_path, "complex-spec JSON file")->required();
    cmd->add_option("--config", config_path, "run configuration JSON file");
    cmd->add_option("--out", out_dir, "output directory for reports");
    cmd->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { seed_override = s; seed_given = true; },
        "seed for randomized property suites");
  };

  CLI::App* validate = app.add_subcommand("validate", "flatness/metric/acyclicity checks");
  CLI::App* identities = app.add_subcommand("identities", "superconnection identity residuals");
  CLI::App* torsion = app.add_subcommand("torsion", "torsion forms over the base grid");
  CLI::App* adiabatic = app.add_subcommand("adiabatic", "adiabatic-limit spectral experiment");
  for (CLI::App* c : {validate, identities, torsion, adiabatic}) add_common(c);

  CLI11_PARSE(app, argc, argv);

  torsionlab::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = torsionlab::RunConfig::from_json_file(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return torsionlab::kExitIoOrSchema;
  }
  if (seed_given) cfg.seed = seed_override;

  int rc = torsionlab::kExitIoOrSchema;
  if (app.got_subcommand(validate)) rc = torsionlab::cmd_validate(spec_path, cfg, out_dir);
  if (app.got_subcommand(identities)) rc = torsionlab::cmd_identities(spec_path, cfg, out_dir);
  if (app.got_subcommand(torsion)) rc = torsionlab::cmd_torsion(spec_path, cfg, out_dir);
  if (app.got_subcommand(adiabatic)) rc = torsionlab::cmd_adiabatic(spec_path, cfg, out_dir);
  return rc;
}
