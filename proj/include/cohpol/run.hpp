#pragma once

// Subcommand dispatch: config in, CSV/JSON out. Exit codes: 0 success,
// 2 validation or configuration failure, 3 numerical abort (growth guard
// or non-finite state).

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "cohpol/coherence.hpp"
#include "cohpol/config.hpp"
#include "cohpol/jcm.hpp"
#include "cohpol/output.hpp"
#include "cohpol/reservoir.hpp"
#include "cohpol/susy.hpp"
#include "cohpol/version.hpp"

namespace cohpol {

namespace detail {

inline void run_rate(const RunConfig& cfg, std::ostream& out) {
  CsvWriter csv(out, cfg,
                {"t", "rate", "a1_re", "a1_im", "a2_re", "a2_im", "a3_re",
                 "a3_im", "a4_re", "a4_im", "total_re", "total_im"});
  for (double t : cfg.grid->points()) {
    const KernelTerms k = kernel_terms(*cfg.reservoir, t);
    csv.row({t, reservoir_rate(*cfg.reservoir, t), k.a1.real(), k.a1.imag(),
             k.a2.real(), k.a2.imag(), k.a3.real(), k.a3.imag(), k.a4.real(),
             k.a4.imag(), k.total.real(), k.total.imag()});
  }
}

inline void run_null_field(const RunConfig& cfg, std::ostream& out) {
  const auto result = null_field(*cfg.atom, *cfg.reservoir,
                                 cfg.grid->points(), cfg.numeric.sin_threshold);
  Json j = json_report_header(cfg);
  j["sin_threshold"] = result.report.sin_threshold;
  j["counts"] = Json{
      {"FEASIBLE", result.report.count(Feasibility::kFeasible)},
      {"INFEASIBLE_NEGATIVE",
       result.report.count(Feasibility::kInfeasibleNegative)},
      {"SINGULAR", result.report.count(Feasibility::kSingular)},
      {"INDETERMINATE", result.report.count(Feasibility::kIndeterminate)}};
  j["all_feasible"] = result.report.all_feasible();
  Json samples = Json::array();
  for (std::size_t i = 0; i < result.report.times.size(); ++i)
    samples.push_back(Json{{"t", result.report.times[i]},
                           {"envelope_sq", result.report.values[i]},
                           {"classification",
                            to_string(result.report.flags[i])}});
  j["samples"] = samples;
  write_json(out, j);
}

inline void run_evolve_coherence(const RunConfig& cfg, std::ostream& out) {
  const auto grid = cfg.grid->points();
  const Envelope env =
      cfg.coherence.envelope == "zero"
          ? zero_envelope(grid)
          : null_field(*cfg.atom, *cfg.reservoir, grid,
                       cfg.numeric.sin_threshold)
                .envelope;
  const OffDiagState rho0{cfg.coherence.rho01, cfg.coherence.rho10};
  const OffDiagTrajectory traj =
      evolve_offdiag(*cfg.atom, env, *cfg.reservoir, rho0, grid);

  CsvWriter csv(out, cfg,
                {"t", "envelope_sq", "gamma", "rho01_re", "rho01_im",
                 "rho10_re", "rho10_im", "rho01_abs"});
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const OffDiagState& s = traj.states[i];
    csv.row({traj.times[i], env.values[i], traj.gamma[i], s.rho01.real(),
             s.rho01.imag(), s.rho10.real(), s.rho10.imag(),
             std::abs(s.rho01)});
  }
}

inline void run_susy_check(const RunConfig& cfg, std::ostream& out) {
  const SusyGenerators gen =
      build_generators(cfg.numeric.fock_dim, cfg.jcm->k);
  const AlgebraReport report = verify_algebra(gen);
  Json j = json_report_header(cfg);
  j["dim"] = gen.dim;
  j["k"] = gen.k;
  j["safe_max_index"] = gen.safe_max_index();
  Json relations;
  for (const auto& rel : report.relations)
    relations[rel.name] = Json{{"safe_residual", rel.safe_residual},
                               {"full_residual", rel.full_residual},
                               {"scale", rel.scale}};
  j["relations"] = relations;
  j["max_safe_relative"] = report.max_safe_relative();
  write_json(out, j);
}

inline void run_evolve_polarization(const RunConfig& cfg, std::ostream& out) {
  const auto grid = cfg.grid->points();
  const JcmParams& p = *cfg.jcm;
  const PolarizationTrajectory traj =
      evolve_offdiag(p, cfg.polarization.rho01, cfg.polarization.rho10, grid,
                     cfg.polarization.c1_mode);

  std::vector<std::string> cols = {"t",        "rho01_re", "rho01_im",
                                   "rho10_re", "rho10_im", "u",
                                   "v"};
  const bool resonant = p.delta == 0.0;
  std::optional<UvTrajectory> closed;
  if (resonant) {
    cols.push_back("u_closed");
    cols.push_back("v_closed");
    const double u0 =
        (cfg.polarization.rho01 + cfg.polarization.rho10).real();
    const double v0 =
        (Complex{0.0, 1.0} * (cfg.polarization.rho01 - cfg.polarization.rho10))
            .real();
    closed = closed_form_zero_detuning(p, u0, v0, grid);
  }

  CsvWriter csv(out, cfg, cols);
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const Complex r01 = traj.rho01[i], r10 = traj.rho10[i];
    std::vector<double> row = {traj.times[i],
                               r01.real(),
                               r01.imag(),
                               r10.real(),
                               r10.imag(),
                               (r01 + r10).real(),
                               (Complex{0.0, 1.0} * (r01 - r10)).real()};
    if (resonant) {
      row.push_back(closed->u[i]);
      row.push_back(closed->v[i]);
    }
    csv.row(row);
  }
}

// Sweep points are independent; they are evaluated in parallel and the
// rows are written in input order regardless of completion order.
inline void run_sweep(const RunConfig& cfg, std::ostream& out) {
  const auto grid = cfg.grid->points();
  const JcmParams& base = *cfg.jcm;
  const double u0 = (cfg.polarization.rho01 + cfg.polarization.rho10).real();
  const double v0 =
      (Complex{0.0, 1.0} * (cfg.polarization.rho01 - cfg.polarization.rho10))
          .real();

  const std::size_t n = cfg.sweep.values.size();
  std::vector<std::vector<double>> rows(n);
  std::vector<std::exception_ptr> failures(n);

  const auto evaluate = [&](std::size_t i) {
    JcmParams p = base;
    const double v = cfg.sweep.values[i];
    if (cfg.sweep.parameter == "m") {
      p.m = static_cast<int>(v);
    } else if (cfg.sweep.parameter == "k") {
      // Detuning is held fixed; omega0 follows the identity.
      p.k = static_cast<int>(v);
      p.omega0 = double(p.k) * p.omega - p.delta;
    } else {  // delta
      p.delta = v;
      p.omega0 = double(p.k) * p.omega - p.delta;
    }
    p.validate();
    const Exponents lam = lambda_exponents(p);
    const UvTrajectory traj =
        evolve_uv(p, u0, v0, grid, cfg.polarization.c1_mode);
    rows[i] = {v,           lam.lambda_u,  lam.lambda_v,
               traj.u.back(), traj.v.back(), traj.times.back()};
  };

  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          evaluate(i);
        } catch (...) {
          failures[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < n; ++i)
    if (failures[i]) std::rethrow_exception(failures[i]);

  CsvWriter csv(out, cfg,
                {cfg.sweep.parameter, "lambda_u", "lambda_v", "u_final",
                 "v_final", "t_final"});
  for (const auto& row : rows) csv.row(row);
}

inline void dispatch(const RunConfig& cfg, std::ostream& out) {
  switch (cfg.mode) {
    case RunMode::kRate: run_rate(cfg, out); break;
    case RunMode::kNullField: run_null_field(cfg, out); break;
    case RunMode::kEvolveCoherence: run_evolve_coherence(cfg, out); break;
    case RunMode::kSusyCheck: run_susy_check(cfg, out); break;
    case RunMode::kEvolvePolarization:
      run_evolve_polarization(cfg, out);
      break;
    case RunMode::kSweep: run_sweep(cfg, out); break;
  }
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv,
                   std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  CLI::App app{std::string(kToolName) +
               " - coherence control and multiphoton polarization dynamics"};
  std::string config_path;
  std::string output_path;
  std::string mode_override;
  app.add_option("--config", config_path, "JSON run configuration")
      ->required();
  app.add_option("--output", output_path,
                 "output file (default: standard output)");
  app.add_option("--mode", mode_override,
                 "override the mode field of the config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "argument error: " << e.what() << "\n";
    return 2;
  }

  try {
    std::ifstream in(config_path);
    if (!in) {
      err << "validation error: cannot read config file \"" << config_path
          << "\"\n";
      return 2;
    }
    std::ostringstream text;
    text << in.rdbuf();
    const std::optional<std::string> override_opt =
        mode_override.empty() ? std::nullopt
                              : std::optional<std::string>(mode_override);
    const RunConfig cfg = parse_config(text.str(), override_opt);

    if (output_path.empty()) {
      detail::dispatch(cfg, out);
    } else {
      std::ofstream file(output_path, std::ios::binary);
      if (!file) {
        err << "validation error: cannot write output file \"" << output_path
            << "\"\n";
        return 2;
      }
      detail::dispatch(cfg, file);
    }
    return 0;
  } catch (const NumericalAbort& e) {
    err << "numerical abort at t = " << format_double(e.time()) << ": "
        << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "validation error: " << e.what() << "\n";
    return 2;
  }
}

inline int run_cli(const std::vector<std::string>& args,
                   std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cohpol
