// snapswim: simulate, calibrate, sweep and synthesize snap-through swimmers.
//
// Exit codes: 0 ok, 1 internal error, 2 bad input or configuration,
// 3 simulation diverged, 4 calibration failed, 5 infeasible mission.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "snapswim/error.hpp"
#include "snapswim/mech/profile.hpp"
#include "snapswim/mission/synthesize.hpp"
#include "snapswim/parallel.hpp"
#include "snapswim/scenario/calibration.hpp"
#include "snapswim/scenario/output.hpp"
#include "snapswim/scenario/sweep.hpp"

namespace fs = std::filesystem;
using namespace snapswim;

namespace {

// Values written by `snapswim calibrate` for the shipped scenarios; used only
// when no calibration file can be found.
constexpr scenario::Calibration kFallbackCalibration{2.6837993177060055, 0.00022282629160274135};

// Shipped files are looked up relative to the working directory first, then
// in the source tree the binary was built from.
fs::path shipped(const std::string& rel) {
  if (fs::exists(rel)) return rel;
  const fs::path p = fs::path(SNAPSWIM_SOURCE_DIR) / rel;
  return fs::exists(p) ? p : fs::path(rel);
}

scenario::Calibration resolve_calibration(const std::string& flag) {
  if (!flag.empty()) return scenario::load_calibration(flag);
  if (const char* env = std::getenv("SNAPSWIM_CALIBRATION"); env && *env) {
    return scenario::load_calibration(env);
  }
  const fs::path def = shipped("calibration/reference.cal");
  if (fs::exists(def)) return scenario::load_calibration(def.string());
  std::cerr << "warning: no calibration file found; using built-in drag coefficients\n";
  return kFallbackCalibration;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path, 0, "", "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_simulate(const std::string& path, const std::string& out_dir,
                 std::optional<double> dt_ms, std::optional<double> horizon_s,
                 const std::string& cal_flag) {
  auto sc = scenario::load_scenario(path);
  if (dt_ms) sc.simulation.dt_s = *dt_ms * 1e-3;
  if (horizon_s) sc.simulation.horizon_s = *horizon_s;
  try {
    sc.simulation.validate();
  } catch (const DomainError& e) {
    throw ConfigError("<command line>", 0, dt_ms ? "--dt-ms" : "--horizon-s", e.what());
  }
  scenario::apply_calibration(sc, resolve_calibration(cal_flag));
  const auto r = scenario::run(sc);
  scenario::write_outputs(out_dir, r, sc.design.body_length_m);
  std::cout << scenario::summary_text(r.summary);
  return 0;
}

int cmd_calibrate(const std::string& out, const std::string& single, const std::string& turn) {
  const auto a = scenario::load_scenario(single);
  const auto b = scenario::load_scenario(turn);
  const auto r = scenario::calibrate(a, b);
  const std::string text = scenario::calibration_text(r);
  if (out.empty()) {
    std::cout << text;
  } else {
    scenario::write_text(out, text);
    std::cout << text;
  }
  return 0;
}

int cmd_sweep(const std::string& path, const std::string& vary, const std::string& out,
              const std::string& cal_flag, unsigned workers) {
  const auto spec = scenario::parse_vary(vary);
  const auto doc = config::Document::load(path);
  const auto rows = scenario::sweep(doc, spec, resolve_calibration(cal_flag), workers);
  const std::string csv = scenario::sweep_csv(spec.key, rows);
  if (!out.empty()) scenario::write_text(out, csv);
  std::cout << csv;
  return 0;
}

int cmd_synth(const std::string& mission_path, const std::string& out, const std::string& cal_flag,
              unsigned workers) {
  const auto m = mission::parse(read_file(mission_path));
  mission::SynthesisOptions opt;
  const auto cal = resolve_calibration(cal_flag);
  opt.hydro.body_drag_coeff = cal.body_drag_coeff;
  opt.hydro.rotational_drag_coeff = cal.rotational_drag_coeff;
  opt.workers = workers;
  const auto report = mission::synthesize(m, opt);
  const std::string text = mission::emit_design(report.best);
  if (!out.empty()) scenario::write_text(out, text);
  std::cout << fmt::format("candidates={} simulated={} score={:.9g}\n{}\n", report.enumerated,
                           report.simulated, report.best.score, mission::describe(report.best.key));
  return 0;
}

int cmd_profile(const std::string& out, const std::string& scenario_path, int pair, int samples) {
  mech::TrussGeometry geom = scenario::reference_truss();
  if (!scenario_path.empty()) {
    const auto sc = scenario::load_scenario(scenario_path);
    if (pair < 0 || pair >= static_cast<int>(sc.design.pairs.size())) {
      throw ConfigError(scenario_path, 0, "--pair", fmt::format("no pair {}", pair));
    }
    geom = sc.design.pairs[pair].truss;
  }
  if (samples < 2) throw ConfigError("<command line>", 0, "--samples", "need at least 2");
  const std::string csv = mech::profile_csv(geom, samples);
  if (out.empty()) {
    std::cout << csv;
  } else {
    scenario::write_text(out, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Snap-through swimmer simulator and design synthesizer", "snapswim"};
  app.require_subcommand(1);

  std::string cal_flag;
  unsigned workers = default_workers();

  std::string sim_scenario, sim_out = "out";
  std::optional<double> dt_ms, horizon_s;
  auto* sim = app.add_subcommand("simulate", "Run a scenario and write its outputs");
  sim->add_option("--scenario", sim_scenario, "Scenario config file")->required();
  sim->add_option("--out-dir", sim_out, "Output directory");
  sim->add_option("--dt-ms", dt_ms, "Time step in ms (at most 10)");
  sim->add_option("--horizon-s", horizon_s, "Simulation horizon in s");
  sim->add_option("--calibration", cal_flag, "Calibration file");

  std::string cal_out, cal_single = "scenarios/single_stroke.cfg",
                       cal_turn = "scenarios/three_fin.cfg";
  auto* cal = app.add_subcommand("calibrate", "Fit drag coefficients to the reference anchors");
  cal->add_option("--out", cal_out, "Calibration file to write");
  cal->add_option("--single", cal_single, "Single-stroke scenario");
  cal->add_option("--turn", cal_turn, "Turn scenario (second stroke is fitted)");

  std::string sw_scenario, sw_vary, sw_out;
  auto* sw = app.add_subcommand("sweep", "Run a scenario once per value of one key");
  sw->add_option("--scenario", sw_scenario, "Scenario config file")->required();
  sw->add_option("--vary", sw_vary, "key=v1,v2,...")->required();
  sw->add_option("--out", sw_out, "CSV output file");
  sw->add_option("--calibration", cal_flag, "Calibration file");
  sw->add_option("--workers", workers, "Worker threads");

  std::string syn_mission, syn_out;
  auto* syn = app.add_subcommand("synth", "Compile a mission into a robot design");
  syn->add_option("--mission", syn_mission, "Mission file")->required();
  syn->add_option("--out", syn_out, "Scenario config to write");
  syn->add_option("--calibration", cal_flag, "Calibration file");
  syn->add_option("--workers", workers, "Worker threads");

  std::string prof_out, prof_scenario;
  int prof_pair = 0, prof_samples = mech::kDefaultScanSamples;
  auto* prof = app.add_subcommand("profile-export", "Write the bistable load/energy curve");
  prof->add_option("--out", prof_out, "CSV output file (stdout if omitted)");
  prof->add_option("--scenario", prof_scenario, "Take the truss from this scenario");
  prof->add_option("--pair", prof_pair, "Pair index within the scenario");
  prof->add_option("--samples", prof_samples, "Grid intervals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*sim) {
      if (!fs::exists(sim_scenario)) throw ConfigError(sim_scenario, 0, "", "cannot open file");
      return cmd_simulate(sim_scenario, sim_out, dt_ms, horizon_s, cal_flag);
    }
    if (*cal) return cmd_calibrate(cal_out, shipped(cal_single), shipped(cal_turn));
    if (*sw) return cmd_sweep(sw_scenario, sw_vary, sw_out, cal_flag, workers);
    if (*syn) return cmd_synth(syn_mission, syn_out, cal_flag, workers);
    if (*prof) return cmd_profile(prof_out, prof_scenario, prof_pair, prof_samples);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mission::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const SimulationDiverged& e) {
    std::cerr << "error: simulation diverged: " << e.what() << "\n";
    return 3;
  } catch (const CalibrationError& e) {
    std::cerr << "error: calibration failed: " << e.what() << "\n";
    return 4;
  } catch (const mission::InfeasibleMission& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
