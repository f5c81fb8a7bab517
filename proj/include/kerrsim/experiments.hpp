#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "kerrsim/analytic.hpp"
#include "kerrsim/dynamics.hpp"
#include "kerrsim/eit.hpp"
#include "kerrsim/errors.hpp"
#include "kerrsim/pulse.hpp"
#include "kerrsim/spectral.hpp"

namespace kerrsim {

enum class Experiment { fig1, sweep, eit_loss, r_calc, worked_example };

inline const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::fig1: return "fig1";
    case Experiment::sweep: return "sweep";
    case Experiment::eit_loss: return "eit-loss";
    case Experiment::r_calc: return "r-calc";
    case Experiment::worked_example: return "worked-example";
  }
  return "?";
}

inline Experiment experiment_from_string(const std::string& s) {
  if (s == "fig1") return Experiment::fig1;
  if (s == "sweep") return Experiment::sweep;
  if (s == "eit-loss" || s == "eit_loss") return Experiment::eit_loss;
  if (s == "r-calc" || s == "r_calc") return Experiment::r_calc;
  if (s == "worked-example" || s == "worked_example") return Experiment::worked_example;
  throw ConfigError("unknown experiment: " + s);
}

inline PulseShape shape_from_string(const std::string& s) {
  if (s == "gaussian") return PulseShape::gaussian;
  if (s == "sech") return PulseShape::sech;
  if (s == "square") return PulseShape::square;
  if (s == "custom") return PulseShape::custom;
  throw ConfigError("unknown pulse shape: " + s);
}

inline EvolutionMethod method_from_string(const std::string& s) {
  if (s == "full_matrix") return EvolutionMethod::full_matrix;
  if (s == "reduced_mu") return EvolutionMethod::reduced_mu;
  throw ConfigError("unknown evolution method: " + s);
}

inline const char* to_string(EvolutionMethod m) {
  return m == EvolutionMethod::full_matrix ? "full_matrix" : "reduced_mu";
}

// One experiment run, assembled from defaults, an optional JSON config file,
// and command-line overrides (flags beat file values beat defaults).
struct RunConfig {
  Experiment experiment = Experiment::fig1;

  // pulse
  PulseShape shape = PulseShape::gaussian;
  double sigma = 0.059;
  double z1 = 0.25;
  int n_max = 8;

  // medium; eta and Phi are mutually derivable (Phi = eta*M*l), so at most
  // one of them may be given explicitly.
  double z0 = 0.5;
  double l = 0.5;
  std::optional<double> eta;
  std::optional<double> Phi;

  // dynamics / eit integration
  int steps = 20000;
  EvolutionMethod method = EvolutionMethod::full_matrix;

  // eit couplings (defaults keep the whole default sigma sweep in-regime)
  double g13 = 3.0;
  double Omega_c = 640.0;
  double gamma31 = 450.0;
  double Gamma31 = 450.0;

  // sweep grids
  double Phi_min = 0.0;
  double Phi_max = std::numbers::pi;
  int points = 8;
  int curve_points = 201;
  double sigma_min = 0.0177;
  double sigma_max = 0.177;

  std::string out;
  int jobs = 1;

  void validate() const {
    if (eta && Phi) {
      throw ConfigError("RunConfig: give either eta or Phi, not both (Phi = eta*M*l)");
    }
    if (points < 1) throw ConfigError("RunConfig: points must be >= 1");
    if (curve_points < 2) throw ConfigError("RunConfig: curve_points must be >= 2");
    if (jobs < 1) throw ConfigError("RunConfig: jobs must be >= 1");
    if (!(sigma_min > 0.0 && sigma_max >= sigma_min)) {
      throw ConfigError("RunConfig: need 0 < sigma_min <= sigma_max");
    }
  }

  MediumConfig medium_for(double phi_value) const {
    return MediumConfig::from_phi(phi_value, z0, l, n_max);
  }

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig from_file(const std::string& path);
};

inline RunConfig RunConfig::from_json(const nlohmann::json& j) {
  RunConfig c;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "experiment") c.experiment = experiment_from_string(value.get<std::string>());
      else if (key == "shape") c.shape = shape_from_string(value.get<std::string>());
      else if (key == "sigma") c.sigma = value.get<double>();
      else if (key == "z1") c.z1 = value.get<double>();
      else if (key == "n_max") c.n_max = value.get<int>();
      else if (key == "z0") c.z0 = value.get<double>();
      else if (key == "l") c.l = value.get<double>();
      else if (key == "eta") c.eta = value.get<double>();
      else if (key == "Phi") c.Phi = value.get<double>();
      else if (key == "steps") c.steps = value.get<int>();
      else if (key == "method") c.method = method_from_string(value.get<std::string>());
      else if (key == "g13") c.g13 = value.get<double>();
      else if (key == "Omega_c") c.Omega_c = value.get<double>();
      else if (key == "gamma31") c.gamma31 = value.get<double>();
      else if (key == "Gamma31") c.Gamma31 = value.get<double>();
      else if (key == "Phi_min") c.Phi_min = value.get<double>();
      else if (key == "Phi_max") c.Phi_max = value.get<double>();
      else if (key == "points") c.points = value.get<int>();
      else if (key == "curve_points") c.curve_points = value.get<int>();
      else if (key == "sigma_min") c.sigma_min = value.get<double>();
      else if (key == "sigma_max") c.sigma_max = value.get<double>();
      else if (key == "out") c.out = value.get<std::string>();
      else if (key == "jobs") c.jobs = value.get<int>();
      else throw ConfigError("RunConfig: unknown key '" + key + "'");
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("RunConfig: bad value for '" + key + "': " + e.what());
    }
  }
  c.validate();
  return c;
}

inline RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("cannot parse config file " + path + ": " + e.what());
  }
  return from_json(j);
}

namespace detail {

// Runs fn(i) for i in [0, n) on up to `jobs` worker threads. Tasks write to
// preallocated slots, so the results do not depend on scheduling.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  jobs = std::min(jobs, n);
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(jobs));
  for (int t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
}

// 12 significant digits, dot decimal, locale-free.
inline std::string csv_number(double v) {
  if (v == 0.0) return "0";  // avoid the "-0" spelling
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// fig1 / sweep: parametric (phi, F0) data
// ---------------------------------------------------------------------------

struct GateSweepRow {
  double Phi = 0.0;
  double r = 0.0;
  double F0_analytic = 0.0;
  double phi_analytic = 0.0;
  bool has_numeric = false;
  double F0_numeric = 0.0;
  double phi_numeric = 0.0;
  double norm_error = 0.0;
};

inline void write_gate_csv(std::ostream& out, const std::vector<GateSweepRow>& rows) {
  out << "Phi,r,F0_analytic,phi_analytic,F0_numeric,phi_numeric,norm_error\n";
  for (const auto& row : rows) {
    out << detail::csv_number(row.Phi) << ',' << detail::csv_number(row.r) << ','
        << detail::csv_number(row.F0_analytic) << ',' << detail::csv_number(row.phi_analytic)
        << ',';
    if (row.has_numeric) {
      out << detail::csv_number(row.F0_numeric) << ',' << detail::csv_number(row.phi_numeric)
          << ',' << detail::csv_number(row.norm_error);
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

inline void write_gate_csv(const std::string& path, const std::vector<GateSweepRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  write_gate_csv(out, rows);
}

// Numeric dots for one pulse over a Phi grid, evaluated concurrently.
inline std::vector<GateSweepRow> numeric_dots(const PulseSpectrum& pulse,
                                              const RunConfig& cfg) {
  const double r = spectral_report(pulse).r;
  const auto state0 = product_state(pulse, pulse);
  EvolutionConfig ecfg;
  ecfg.steps = cfg.steps;
  ecfg.method = cfg.method;

  std::vector<GateSweepRow> rows(static_cast<std::size_t>(cfg.points));
  detail::parallel_for(cfg.points, cfg.jobs, [&](int i) {
    const double phi_value =
        cfg.points == 1
            ? cfg.Phi_min
            : cfg.Phi_min + (cfg.Phi_max - cfg.Phi_min) * static_cast<double>(i) /
                                static_cast<double>(cfg.points - 1);
    const auto medium = cfg.medium_for(phi_value);
    const auto final_state = evolve(state0, medium, ecfg);
    const auto gate = gate_from_overlap(overlap_with(final_state, state0), phi_value, r,
                                        GateSource::numeric);
    const auto reference = fidelity_phase(phi_value, r);

    GateSweepRow& row = rows[static_cast<std::size_t>(i)];
    row.Phi = phi_value;
    row.r = r;
    row.F0_analytic = reference.fidelity_F0;
    row.phi_analytic = reference.phase_phi;
    row.has_numeric = true;
    row.F0_numeric = gate.fidelity_F0;
    row.phi_numeric = gate.phase_phi;
    row.norm_error = std::abs(final_state.norm() - 1.0);
  });
  return rows;
}

// Closed-form curves for r in {0.2, 0.3, 0.4} over Phi in [0, 2 pi], plus
// full Schroedinger dots for the two reference gaussian pulses over
// [Phi_min, Phi_max] (numeric integration is worthwhile only up to pi; past
// it the curves retrace).
inline std::vector<GateSweepRow> run_fig1(const RunConfig& cfg) {
  cfg.validate();
  std::vector<GateSweepRow> rows;

  for (double r : {0.2, 0.3, 0.4}) {
    for (int j = 0; j < cfg.curve_points; ++j) {
      const double phi_value = 2.0 * std::numbers::pi * static_cast<double>(j) /
                               static_cast<double>(cfg.curve_points - 1);
      const auto g = fidelity_phase(phi_value, r);
      rows.push_back({phi_value, r, g.fidelity_F0, g.phase_phi, false, 0.0, 0.0, 0.0});
    }
  }

  for (double sigma : {0.059, 0.078}) {
    const auto pulse = make_pulse(PulseShape::gaussian, sigma, cfg.z1, cfg.n_max);
    const auto dots = numeric_dots(pulse, cfg);
    rows.insert(rows.end(), dots.begin(), dots.end());
  }

  if (!cfg.out.empty()) write_gate_csv(cfg.out, rows);
  return rows;
}

// Same dot machinery for the configured pulse only.
inline std::vector<GateSweepRow> run_sweep(const RunConfig& cfg) {
  cfg.validate();
  const auto pulse = make_pulse(cfg.shape, cfg.sigma, cfg.z1, cfg.n_max);
  auto rows = numeric_dots(pulse, cfg);
  if (!cfg.out.empty()) write_gate_csv(cfg.out, rows);
  return rows;
}

// ---------------------------------------------------------------------------
// eit-loss: absorption versus pulse bandwidth
// ---------------------------------------------------------------------------

struct EitLossRow {
  double sigma = 0.0;
  double delta_omega = 0.0;
  double loss_numeric = 0.0;
  double loss_adiabatic = 0.0;
  double ratio = 0.0;
  bool regime_ok = false;
};

inline void write_eit_csv(std::ostream& out, const std::vector<EitLossRow>& rows) {
  out << "sigma,delta_omega,loss_numeric,loss_adiabatic,ratio,regime_ok\n";
  for (const auto& row : rows) {
    out << detail::csv_number(row.sigma) << ',' << detail::csv_number(row.delta_omega) << ','
        << detail::csv_number(row.loss_numeric) << ',' << detail::csv_number(row.loss_adiabatic)
        << ',' << detail::csv_number(row.ratio) << ',' << (row.regime_ok ? '1' : '0') << '\n';
  }
}

inline void write_eit_csv(const std::string& path, const std::vector<EitLossRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  write_eit_csv(out, rows);
}

// Sweeps sigma geometrically over [sigma_min, sigma_max]. The pulse is
// centered at z1 = 0.5 so it reaches the atom mid-run and its tails at
// t = 0 and t = T are negligible; the mode count adapts to the narrowest
// pulse in the sweep.
inline std::vector<EitLossRow> run_eit_loss(const RunConfig& cfg) {
  cfg.validate();
  EitConfig ecfg;
  ecfg.g13 = cfg.g13;
  ecfg.Omega_c = cfg.Omega_c;
  ecfg.gamma31 = cfg.gamma31;
  ecfg.Gamma31 = cfg.Gamma31;
  ecfg.steps = cfg.steps;

  std::vector<EitLossRow> rows(static_cast<std::size_t>(cfg.points));
  detail::parallel_for(cfg.points, cfg.jobs, [&](int i) {
    const double f = cfg.points == 1
                         ? 0.0
                         : static_cast<double>(i) / static_cast<double>(cfg.points - 1);
    const double sigma = cfg.sigma_min * std::pow(cfg.sigma_max / cfg.sigma_min, f);
    const int n_max = std::max(cfg.n_max, minimal_containing_n_max(cfg.shape, sigma));
    const auto pulse = make_pulse(cfg.shape, sigma, 0.5, n_max);
    const auto res = evolve_atom(pulse, ecfg);

    EitLossRow& row = rows[static_cast<std::size_t>(i)];
    row.sigma = sigma;
    row.delta_omega = pulse_delta_omega_std(pulse);
    row.loss_numeric = res.loss_numeric;
    row.loss_adiabatic = res.loss_adiabatic;
    row.ratio = res.loss_adiabatic > 0.0 ? res.loss_numeric / res.loss_adiabatic : 0.0;
    row.regime_ok = res.regime_ok;
  });

  if (!cfg.out.empty()) write_eit_csv(cfg.out, rows);
  return rows;
}

// ---------------------------------------------------------------------------
// r-calc: spectral diagnostics of one pulse
// ---------------------------------------------------------------------------

struct RCalcRow {
  std::string shape;
  double sigma = 0.0;
  double z1 = 0.0;
  int n_max = 0;
  int modes = 0;
  double r = 0.0;
  double r_intensity = 0.0;
  double delta_omega_std = 0.0;
  double delta_omega_support = 0.0;
  double bound_ratio = 0.0;
  int minimal_modes = 0;
};

inline void write_r_calc_csv(std::ostream& out, const RCalcRow& row) {
  out << "shape,sigma,z1,n_max,M,r,r_intensity,delta_omega_std,delta_omega_support,"
         "bound_ratio,minimal_M\n";
  out << row.shape << ',' << detail::csv_number(row.sigma) << ','
      << detail::csv_number(row.z1) << ',' << row.n_max << ',' << row.modes << ','
      << detail::csv_number(row.r) << ',' << detail::csv_number(row.r_intensity) << ','
      << detail::csv_number(row.delta_omega_std) << ','
      << detail::csv_number(row.delta_omega_support) << ','
      << detail::csv_number(row.bound_ratio) << ',' << row.minimal_modes << '\n';
}

inline RCalcRow run_r_calc(const RunConfig& cfg) {
  cfg.validate();
  const auto pulse = make_pulse(cfg.shape, cfg.sigma, cfg.z1, cfg.n_max);
  const auto rep = spectral_report(pulse);
  RCalcRow row;
  row.shape = to_string(cfg.shape);
  row.sigma = cfg.sigma;
  row.z1 = cfg.z1;
  row.n_max = cfg.n_max;
  row.modes = pulse.modes();
  row.r = rep.r;
  row.r_intensity = r_from_intensity(pulse.sample_intensity(4096), pulse.modes());
  row.delta_omega_std = rep.delta_omega_std;
  row.delta_omega_support = rep.delta_omega_support;
  row.bound_ratio = rep.bound_ratio;
  row.minimal_modes = 2 * minimal_containing_n_max(cfg.shape, cfg.sigma) + 1;

  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + cfg.out);
    write_r_calc_csv(out, row);
  }
  return row;
}

// ---------------------------------------------------------------------------
// worked-example: the full small-numbers chain
// ---------------------------------------------------------------------------

struct WorkedExampleReport {
  double r = 0.0;           // spectral parameter of the reference pulse
  double p_loss = 0.0;      // 2 r^2 / pi, gaussian transparency-limited loss
  double Phi = 0.0;         // strength at which 1 - F0 reaches 0.1
  double phi = 0.0;         // resulting conditional phase
  double do_nothing = 0.0;  // cos^2(phi/2), overlap of doing nothing at all

  // Companion targets the chain is expected to reproduce.
  static constexpr double r_expected = 0.4;
  static constexpr double p_loss_expected = 0.102;
  static constexpr double Phi_expected = 0.657;
  static constexpr double phi_expected = 0.260;
  static constexpr double do_nothing_expected = 0.983;
};

inline void write_worked_example_csv(std::ostream& out, const WorkedExampleReport& rep) {
  out << "quantity,value,expected\n";
  out << "r," << detail::csv_number(rep.r) << ','
      << detail::csv_number(WorkedExampleReport::r_expected) << '\n';
  out << "P_loss," << detail::csv_number(rep.p_loss) << ','
      << detail::csv_number(WorkedExampleReport::p_loss_expected) << '\n';
  out << "Phi," << detail::csv_number(rep.Phi) << ','
      << detail::csv_number(WorkedExampleReport::Phi_expected) << '\n';
  out << "phi," << detail::csv_number(rep.phi) << ','
      << detail::csv_number(WorkedExampleReport::phi_expected) << '\n';
  out << "do_nothing_overlap," << detail::csv_number(rep.do_nothing) << ','
      << detail::csv_number(WorkedExampleReport::do_nothing_expected) << '\n';
}

// gaussian pulse -> r ~ 0.4 -> P_loss = 2r^2/pi ~ 0.1 -> Phi from
// 1 - F0 = 0.1 -> phi -> cos^2(phi/2): the chain showing that by the time
// losses and infidelity are acceptable, the phase is too small to be useful.
inline WorkedExampleReport run_worked_example(const RunConfig& cfg = {}) {
  const auto pulse = make_pulse(PulseShape::gaussian, cfg.sigma, cfg.z1, cfg.n_max);
  WorkedExampleReport rep;
  rep.r = spectral_report(pulse).r;
  rep.p_loss = 2.0 * rep.r * rep.r / std::numbers::pi;
  const double infidelity = 0.1;
  rep.Phi = 2.0 * std::asin(std::sqrt(infidelity / (4.0 * rep.r * (1.0 - rep.r))));
  rep.phi = fidelity_phase(rep.Phi, rep.r).phase_phi;
  rep.do_nothing = std::pow(std::cos(rep.phi / 2.0), 2);

  if (!cfg.out.empty()) {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file: " + cfg.out);
    write_worked_example_csv(out, rep);
  }
  return rep;
}

}  // namespace kerrsim
