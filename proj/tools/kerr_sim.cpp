// Command-line harness for the single-photon cross-Kerr simulator.
//
// Subcommands: fig1, sweep, eit-loss, r-calc, worked-example. Options can
// come from a JSON config file (--config); flags override file values.
// Exit codes: 0 success, 2 configuration error, 3 numerical-guard failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "kerrsim/kerrsim.hpp"

namespace {

int jobs_from_env() {
  const char* env = std::getenv("KERR_SIM_JOBS");
  if (env == nullptr) return 1;
  const int jobs = std::atoi(env);
  if (jobs < 1) throw kerrsim::ConfigError("KERR_SIM_JOBS must be a positive integer");
  return jobs;
}

void print_worked_example(const kerrsim::WorkedExampleReport& rep) {
  using Rep = kerrsim::WorkedExampleReport;
  std::printf("%-22s %12s %10s\n", "quantity", "value", "expected");
  std::printf("%-22s %12.6f %10.3f\n", "r", rep.r, Rep::r_expected);
  std::printf("%-22s %12.6f %10.3f\n", "P_loss = 2r^2/pi", rep.p_loss, Rep::p_loss_expected);
  std::printf("%-22s %12.6f %10.3f\n", "Phi (1-F0 = 0.1)", rep.Phi, Rep::Phi_expected);
  std::printf("%-22s %12.6f %10.3f\n", "phi", rep.phi, Rep::phi_expected);
  std::printf("%-22s %12.6f %10.3f\n", "cos^2(phi/2)", rep.do_nothing, Rep::do_nothing_expected);
}

int run(const kerrsim::RunConfig& cfg) {
  using namespace kerrsim;
  switch (cfg.experiment) {
    case Experiment::fig1: {
      const auto rows = run_fig1(cfg);
      if (cfg.out.empty()) write_gate_csv(std::cout, rows);
      else std::printf("wrote %zu rows to %s\n", rows.size(), cfg.out.c_str());
      break;
    }
    case Experiment::sweep: {
      const auto rows = run_sweep(cfg);
      if (cfg.out.empty()) write_gate_csv(std::cout, rows);
      else std::printf("wrote %zu rows to %s\n", rows.size(), cfg.out.c_str());
      break;
    }
    case Experiment::eit_loss: {
      const auto rows = run_eit_loss(cfg);
      if (cfg.out.empty()) write_eit_csv(std::cout, rows);
      else std::printf("wrote %zu rows to %s\n", rows.size(), cfg.out.c_str());
      break;
    }
    case Experiment::r_calc: {
      const auto row = run_r_calc(cfg);
      write_r_calc_csv(std::cout, row);
      break;
    }
    case Experiment::worked_example: {
      const auto rep = run_worked_example(cfg);
      print_worked_example(rep);
      break;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace kerrsim;
  try {
    // The config file is applied first so that every flag can override it.
    std::string config_path;
    for (int i = 1; i + 1 < argc; ++i) {
      if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    }

    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::from_file(config_path);
    cfg.jobs = jobs_from_env();
    // A "jobs" key in the file still wins over the environment default.
    if (!config_path.empty()) {
      const auto file_cfg = RunConfig::from_file(config_path);
      if (file_cfg.jobs != 1) cfg.jobs = file_cfg.jobs;
    }

    CLI::App app{"Two single-photon wavepackets through a localized Kerr medium"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string shape_s, method_s;
    app.add_option("--config", config_path, "JSON config file (applied before flags)");
    app.add_option("--shape", shape_s, "pulse shape: gaussian|sech|square");
    app.add_option("--sigma", cfg.sigma, "pulse length parameter (units of L)");
    app.add_option("--z1", cfg.z1, "pulse center in [0,1)");
    app.add_option("--n-max", cfg.n_max, "modes per side; M = 2*n_max+1");
    app.add_option("--z0", cfg.z0, "medium start in [0,1)");
    app.add_option("--l", cfg.l, "medium length in (0,1]");
    app.add_option("--eta", cfg.eta, "medium coupling (exclusive with --Phi)");
    app.add_option("--Phi", cfg.Phi, "bare interaction strength eta*M*l (exclusive with --eta)");
    app.add_option("--steps", cfg.steps, "RK4 steps over one quantization time");
    app.add_option("--method", method_s, "evolution: full_matrix|reduced_mu");
    app.add_option("--g13", cfg.g13, "single-photon coupling of the 1-3 transition");
    app.add_option("--Omega-c", cfg.Omega_c, "EIT coupling Rabi frequency");
    app.add_option("--gamma31", cfg.gamma31, "total 1-3 coherence decay");
    app.add_option("--Gamma31", cfg.Gamma31, "radiative 1-3 decay (<= gamma31)");
    app.add_option("--phi-min", cfg.Phi_min, "sweep start");
    app.add_option("--phi-max", cfg.Phi_max, "sweep end");
    app.add_option("--points", cfg.points, "sweep points");
    app.add_option("--curve-points", cfg.curve_points, "resolution of closed-form curves");
    app.add_option("--sigma-min", cfg.sigma_min, "eit-loss sweep start");
    app.add_option("--sigma-max", cfg.sigma_max, "eit-loss sweep end");
    app.add_option("--out", cfg.out, "output CSV path (default: stdout)");
    app.add_option("--jobs", cfg.jobs, "max concurrent sweep points (env KERR_SIM_JOBS)");

    auto* fig1 = app.add_subcommand("fig1", "closed-form curves plus full-integration dots");
    auto* sweep = app.add_subcommand("sweep", "numeric gate sweep for the configured pulse");
    auto* eit = app.add_subcommand("eit-loss", "absorption loss versus pulse bandwidth");
    auto* rcalc = app.add_subcommand("r-calc", "spectral diagnostics of one pulse");
    auto* worked = app.add_subcommand("worked-example", "the small-numbers chain end to end");

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }

    if (!shape_s.empty()) cfg.shape = shape_from_string(shape_s);
    if (!method_s.empty()) cfg.method = method_from_string(method_s);
    if (fig1->parsed()) cfg.experiment = Experiment::fig1;
    else if (sweep->parsed()) cfg.experiment = Experiment::sweep;
    else if (eit->parsed()) cfg.experiment = Experiment::eit_loss;
    else if (rcalc->parsed()) cfg.experiment = Experiment::r_calc;
    else if (worked->parsed()) cfg.experiment = Experiment::worked_example;
    else if (config_path.empty()) {
      std::cerr << "error: give a subcommand or a --config file naming the experiment\n";
      return 2;
    }

    cfg.validate();
    return run(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalGuardError& e) {
    std::cerr << "numerical guard: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
