#include "torsionlab/cli_reports.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "torsionlab/json_io.hpp"
#include "torsionlab/rng.hpp"
#include "torsionlab/torsion.hpp"

namespace torsionlab {

namespace {

using nlohmann::json;

void check_known_keys(const json& j, const std::vector<std::string>& known,
                      const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : known)
      if (it.key() == k) ok = true;
    if (!ok)
      throw std::invalid_argument("config: unknown key '" + it.key() + "' in " + where);
  }
}

} // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config JSON parse error: ") + e.what());
  }
  check_known_keys(j,
                   {"grid_n", "tolerance", "u_values", "r_values", "sample_points", "torsion",
                    "adiabatic", "seed"},
                   "top level");
  RunConfig cfg;
  cfg.grid_n = j.value("grid_n", cfg.grid_n);
  cfg.tolerance = j.value("tolerance", cfg.tolerance);
  if (j.contains("u_values")) cfg.u_values = j.at("u_values").get<std::vector<double>>();
  if (j.contains("r_values")) cfg.r_values = j.at("r_values").get<std::vector<double>>();
  cfg.sample_points = j.value("sample_points", cfg.sample_points);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("torsion")) {
    const auto& t = j.at("torsion");
    check_known_keys(t, {"grid_n", "r_values", "dmz7"}, "torsion");
    cfg.torsion_grid_n = t.value("grid_n", cfg.torsion_grid_n);
    if (t.contains("r_values"))
      cfg.torsion_r_values = t.at("r_values").get<std::vector<double>>();
    cfg.torsion_dmz7 = t.value("dmz7", cfg.torsion_dmz7);
  }
  if (j.contains("adiabatic")) {
    const auto& a = j.at("adiabatic");
    check_known_keys(a,
                     {"u_schedule", "r", "n_modes", "n_modes_refined", "rhs_grid",
                      "fine_factor", "dimension_cap", "spectral_diagnostics", "heat_trace_csv"},
                     "adiabatic");
    auto& e = cfg.adiabatic;
    if (a.contains("u_schedule")) e.u_schedule = a.at("u_schedule").get<std::vector<double>>();
    e.r = a.value("r", e.r);
    e.n_modes = a.value("n_modes", e.n_modes);
    e.n_modes_refined = a.value("n_modes_refined", e.n_modes_refined);
    e.rhs_grid = a.value("rhs_grid", e.rhs_grid);
    e.fine_factor = a.value("fine_factor", e.fine_factor);
    e.dimension_cap = a.value("dimension_cap", e.dimension_cap);
    e.spectral_diagnostics = a.value("spectral_diagnostics", e.spectral_diagnostics);
    e.heat_trace_csv = a.value("heat_trace_csv", e.heat_trace_csv);
  }
  return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

void apply_thread_cap() {
  if (const char* cap = std::getenv("TORSIONLAB_THREADS")) {
    // OpenBLAS reads its thread count from the environment at startup.
    setenv("OPENBLAS_NUM_THREADS", cap, 0);
    setenv("OMP_NUM_THREADS", cap, 0);
  }
}

namespace {

void ensure_out_dir(const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory: " + out_dir);
}

} // namespace

int cmd_validate(const std::string& spec_path, const RunConfig& cfg, const std::string& out_dir) {
  ensure_out_dir(out_dir);
  OrderedJson rep;
  int exit_code = kExitOk;
  try {
    FlatComplexSpec spec = load_complex_spec(spec_path);
    TorusGrid grid{spec.base_dim(), spec.base_dim() <= 2 ? cfg.grid_n : 8};
    ValidationReport v = spec.validate_flatness(grid, 1e-10);
    const double lmin = spec.acyclicity_check(grid);
    rep["spec"] = spec_path;
    rep["flatness_residual"] = v.flatness_residual;
    rep["differential_residual"] = v.differential_residual;
    rep["h_min_eigenvalue"] = v.h_min_eigenvalue;
    rep["h_worst_point"] = v.h_worst_point;
    rep["acyclicity_lambda_min"] = lmin;
    rep["acyclic"] = lmin > 1e-10;
    rep["passed"] = v.passed;
    rep["message"] = v.message;
    if (!v.passed) exit_code = kExitValidationFailure;
  } catch (const std::invalid_argument& e) {
    rep["error"] = e.what();
    // Structural errors in an otherwise readable file are validation
    // failures; unreadable/undecodable input is an I/O error.
    const std::string what = e.what();
    exit_code = what.find("JSON parse error") != std::string::npos ? kExitIoOrSchema
                                                                   : kExitValidationFailure;
  } catch (const std::exception& e) {
    rep["error"] = e.what();
    exit_code = kExitIoOrSchema;
  }
  rep["exit_code"] = exit_code;
  write_json(rep, out_dir + "/validate.json");
  return exit_code;
}

int cmd_identities(const std::string& spec_path, const RunConfig& cfg,
                   const std::string& out_dir) {
  ensure_out_dir(out_dir);
  OrderedJson rep;
  int exit_code = kExitOk;
  try {
    FlatComplexSpec spec = load_complex_spec(spec_path);
    FormContextPtr ctx = make_form_context(spec.base_dim());
    TorusGrid grid{spec.base_dim(), cfg.grid_n};
    Rng rng(cfg.seed);
    std::vector<long> points;
    for (int i = 0; i < cfg.sample_points; ++i)
      points.push_back(long(rng.uniform() * double(grid.total())) % grid.total());

    OrderedJson rows = OrderedJson::array();
    double worst = 0.0;
    for (double u : cfg.u_values) {
      IdentityChecker checker(spec, grid, u, ctx);
      for (long pt : points)
        for (double r : cfg.r_values) {
          IdentityResiduals res = checker.at(pt, r);
          OrderedJson row;
          row["point"] = pt;
          row["u"] = u;
          row["r"] = r;
          row["curvature_vs_d2"] = res.curvature_vs_d2;
          row["bracket_c_d"] = res.bracket_c_d;
          row["deformed_square"] = res.deformed_square;
          row["deformed_square_d2"] = res.deformed_square_d2;
          row["number_bracket_d"] = res.number_bracket_d;
          row["number_bracket_c"] = res.number_bracket_c;
          row["deformed_v_square"] = res.deformed_v_square;
          rows.push_back(row);
          worst = std::max(worst, res.max());
        }
    }
    rep["spec"] = spec_path;
    rep["seed"] = cfg.seed;
    rep["tolerance"] = cfg.tolerance;
    rep["rows"] = rows;
    rep["max_residual"] = worst;
    rep["passed"] = worst <= cfg.tolerance;
    if (worst > cfg.tolerance) exit_code = kExitValidationFailure;
  } catch (const std::exception& e) {
    rep["error"] = e.what();
    exit_code = kExitIoOrSchema;
  }
  rep["exit_code"] = exit_code;
  write_json(rep, out_dir + "/identities.json");
  return exit_code;
}

int cmd_torsion(const std::string& spec_path, const RunConfig& cfg, const std::string& out_dir) {
  ensure_out_dir(out_dir);
  OrderedJson rep;
  int exit_code = kExitOk;
  try {
    FlatComplexSpec spec = load_complex_spec(spec_path);
    FormContextPtr ctx = make_form_context(spec.base_dim());
    TorusGrid grid{spec.base_dim(), spec.base_dim() <= 2 ? cfg.torsion_grid_n : 6};
    const double lmin = spec.acyclicity_check(grid);
    if (lmin <= 1e-10) {
      rep["error"] = "complex is not acyclic; torsion is undefined";
      rep["acyclicity_lambda_min"] = lmin;
      exit_code = kExitValidationFailure;
      rep["exit_code"] = exit_code;
      write_json(rep, out_dir + "/torsion.json");
      return exit_code;
    }
    TorsionOptions topts;
    topts.lambda_min = lmin;
    rep["spec"] = spec_path;
    rep["acyclicity_lambda_min"] = lmin;
    OrderedJson runs = OrderedJson::array();
    for (double r : cfg.torsion_r_values) {
      OrderedJson run;
      run["r"] = r;
      OrderedJson pts = OrderedJson::array();
      Complex top_integral = 0.0;
      double max_fit_residual = 0.0, max_tail = 0.0;
      const std::uint32_t top = (1u << spec.base_dim()) - 1;
      for (long i = 0; i < grid.total(); ++i) {
        TorsionValue tv = torsion_form(spec.point_data(grid.point(i), ctx), r, topts);
        OrderedJson pj;
        pj["point"] = grid.indices(i);
        pj["torsion"] = form_json(tv.value);
        pts.push_back(pj);
        top_integral += tv.value.coeff(top);
        max_fit_residual = std::max(max_fit_residual, tv.fit.residual);
        max_tail = std::max(max_tail, tv.tail_bound);
      }
      double cell = 1.0;
      for (int a = 0; a < spec.base_dim(); ++a) cell *= 6.28318530717958647692 / grid.n;
      run["integrated_top_component"] = complex_json(top_integral * cell);
      run["diagnostics"] = {{"max_fit_residual", max_fit_residual},
                            {"max_tail_bound", max_tail},
                            {"t_grid", {topts.fit_lo, topts.fit_hi}}};
      run["points"] = pts;
      if (cfg.torsion_dmz7) {
        OrderedJson cmp = OrderedJson::array();
        for (long i = 0; i < std::min<long>(10, grid.total()); ++i) {
          const long idx = (i * 7919) % grid.total();
          Dmz7Comparison c =
              check_dmz7(spec.point_data(grid.point(idx), ctx), r, 2, topts);
          OrderedJson cj;
          cj["point"] = grid.indices(idx);
          cj["factor"] = c.factor;
          cj["max_abs_diff"] = c.max_abs_diff;
          cj["max_component"] = c.max_component;
          cj["vacuous"] = c.vacuous;
          cmp.push_back(cj);
        }
        run["dmz7"] = cmp;
      }
      runs.push_back(run);
    }
    rep["runs"] = runs;
  } catch (const std::exception& e) {
    rep["error"] = e.what();
    exit_code = kExitIoOrSchema;
  }
  rep["exit_code"] = exit_code;
  write_json(rep, out_dir + "/torsion.json");
  return exit_code;
}

int cmd_adiabatic(const std::string& spec_path, const RunConfig& cfg,
                  const std::string& out_dir) {
  ensure_out_dir(out_dir);
  OrderedJson rep;
  int exit_code = kExitOk;
  try {
    FlatComplexSpec spec = load_complex_spec(spec_path);
    ExperimentReport er = run_experiment(spec, cfg.adiabatic);
    rep["spec"] = spec_path;
    rep["r"] = cfg.adiabatic.r;
    rep["u_schedule"] = cfg.adiabatic.u_schedule;
    rep["n_modes"] = cfg.adiabatic.n_modes;
    auto sweep_json = [](const SweepResult& s) {
      OrderedJson j;
      j["n_modes"] = s.n_modes;
      j["delta_u"] = s.delta;
      j["sigma_min"] = s.sigma_min;
      j["extrapolated"] = s.extrapolated;
      j["model_coefficients"] = s.model_coefficients;
      return j;
    };
    rep["sweep"] = sweep_json(er.sweep);
    if (!er.sweep_refined.delta.empty()) {
      rep["sweep_refined"] = sweep_json(er.sweep_refined);
      rep["relative_error_refined"] = er.relative_error_refined;
      rep["refinement_monotone"] = er.refinement_monotone;
    }
    rep["rhs_integral"] = complex_json(er.rhs_integral);
    rep["half_extrapolated"] = 0.5 * er.sweep.extrapolated;
    rep["relative_error"] = er.relative_error;
    rep["lambda_min"] = er.lambda_min;
    rep["converged"] = er.converged;
    rep["message"] = er.message;
    if (!er.converged) exit_code = kExitValidationFailure;
  } catch (const std::length_error& e) {
    rep["error"] = e.what();
    exit_code = kExitDimensionCap;
  } catch (const std::exception& e) {
    rep["error"] = e.what();
    exit_code = kExitIoOrSchema;
  }
  rep["exit_code"] = exit_code;
  write_json(rep, out_dir + "/adiabatic.json");
  return exit_code;
}

} // namespace torsionlab
