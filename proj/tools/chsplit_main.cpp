#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "chsplit/config.hpp"
#include "chsplit/diagnostics_io.hpp"
#include "chsplit/energy.hpp"
#include "chsplit/error.hpp"
#include "chsplit/fourier.hpp"
#include "chsplit/harness.hpp"
#include "chsplit/kernels.hpp"
#include "chsplit/norms.hpp"
#include "chsplit/snapshot.hpp"

namespace {

using namespace chsplit;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnstable = 2;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  return out;
}

void close_output(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError(path + ": write failed");
}

std::string snapshot_path(const std::string& prefix, int step) {
  char digits[16];
  std::snprintf(digits, sizeof digits, "%08d", step);
  return prefix + "_" + digits + ".chf";
}

void report_symbol_check(const SolverParams& p) {
  const SymbolInequalityCheck check = check_symbol_inequality(p);
  std::cout << "symbol inequality: " << (check.holds ? "holds" : "VIOLATED") << " on "
            << check.modes_checked << " modes (min ratio " << format_real(check.min_ratio) << ")\n";
  std::cout << "max linear amplification: "
            << format_real(SplittingScheme(p).max_linear_amplification()) << '\n';
}

int cmd_simulate(const RunConfig& config, int snapshot_every) {
  RunOptions options;
  options.steps = config.steps;
  options.k0 = config.k0;
  options.blowup_threshold = config.blowup;
  options.snapshot_every = snapshot_every;
  if (snapshot_every > 0) {
    options.on_snapshot = [&](int step, const RealField& u) {
      const Snapshot snap{kSnapshotVersion, static_cast<std::uint64_t>(step), config.params.tau,
                          config.params.nu, u};
      write_snapshot(snapshot_path(config.snapshot_prefix, step), snap);
    };
  }
  report_symbol_check(config.params);
  const RunDiagnostics d = run(config.initial, config.params, options);
  write_diagnostics(config.output, d);

  int violations = 0;
  for (const StepRecord& r : d.records) violations += r.cert_ok ? 0 : 1;
  std::cout << "steps recorded: " << d.records.size() << ", certificate violations: " << violations
            << ", output: " << config.output << '\n';
  if (d.unstable) {
    std::cout << "unstable: blow-up guard tripped at step " << d.unstable_step << '\n';
    return kExitUnstable;
  }
  return kExitOk;
}

int cmd_converge(const RunConfig& config) {
  validate_convergence_config(config);
  ConvergenceOptions options;
  options.ref_divisor = config.ref_divisor;
  options.reference_order = config.reference_order;
  const ConvergenceStudy study =
      convergence_study(config.initial, config.params, config.horizon, config.taus, options);
  std::ofstream out = open_output(config.output);
  out << "tau,error\n";
  for (std::size_t i = 0; i < study.taus.size(); ++i) {
    out << format_real(study.taus[i]) << ',' << format_real(study.errors[i]) << '\n';
  }
  close_output(out, config.output);
  std::cout << study.reference_spec << '\n'
            << "fitted order: " << format_real(study.fitted_order) << '\n';
  return kExitOk;
}

int cmd_kernel_study(const RunConfig& config) {
  std::vector<double> betas = config.betas;
  if (betas.empty()) {
    for (int e = 4; e <= 14; ++e) betas.push_back(std::ldexp(1.0, -e));
  }
  const auto results = kernel_norm_sweep(config.kernel, config.kernel_p, betas);
  std::ofstream out = open_output(config.output);
  out << "beta,p,norm,predicted_exponent,fitted_exponent\n";
  for (const KernelStudyResult& r : results) {
    out << format_real(r.beta) << ',' << format_real(r.p) << ',' << format_real(r.norm_value) << ','
        << format_real(r.predicted_exponent) << ',' << format_real(r.fitted_exponent) << '\n';
  }
  close_output(out, config.output);
  if (!results.empty()) {
    std::cout << "kernel " << (config.kernel == KernelVariant::full ? "K" : "K_tilde") << ", p = "
              << format_real(config.kernel_p) << ": fitted exponent "
              << format_real(results.front().fitted_exponent) << ", predicted "
              << format_real(results.front().predicted_exponent) << '\n';
  }

  const auto corpus = random_corpus(config.params.grid(), config.smoothing_fields, config.initial.seed,
                                    config.initial.band, 1.0);
  double c1 = 0.0, c2 = 0.0;
  for (int d = 1; d <= 6; ++d) {
    const double tau = std::pow(10.0, -d);
    for (const SpectralField& f : corpus) {
      const RealField g = inverse(f);
      c1 = std::max(c1, smoothing_ratio(g, config.params.nu, tau, SmoothingEstimate::linf_from_l4));
      c2 = std::max(c2, smoothing_ratio(g, config.params.nu, tau, SmoothingEstimate::laplacian_linf_from_l43));
    }
  }
  std::cout << "smoothing constants over " << corpus.size() << " fields, tau = 1e-1..1e-6: C1 >= "
            << format_real(c1) << ", C2 >= " << format_real(c2) << '\n';
  return kExitOk;
}

int cmd_defect_study(const RunConfig& config) {
  std::vector<double> taus = config.taus;
  if (taus.empty()) {
    for (int i = 0; i < 5; ++i) taus.push_back(std::ldexp(config.params.tau, -i));
  }
  const DefectRateStudy study = defect_rate_study(config.initial, config.params, taus, config.d1);
  std::ofstream out = open_output(config.output);
  out << "tau,defect_l2,h8,bound_rhs,ratio\n";
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const DefectReport& r = study.reports[i];
    out << format_real(taus[i]) << ',' << format_real(r.defect_l2) << ',' << format_real(r.h8) << ','
        << format_real(r.bound_rhs) << ',' << format_real(r.ratio) << '\n';
  }
  close_output(out, config.output);
  std::cout << "defect slope: " << format_real(study.slope) << '\n';
  return kExitOk;
}

int cmd_tau_star(const RunConfig& config) {
  const SpectralField u0 = realize(config.initial, config.params.grid());
  const ThresholdEstimate t = threshold(inverse(u0), config.params, config.constants, config.bisection);
  std::ofstream out = open_output(config.output);
  out << "alpha,tau_star_formula,tau_star_empirical,at_bracket_top,e1_first_step,h1_initial\n"
      << format_real(t.alpha) << ',' << format_real(t.tau_star_formula) << ','
      << format_real(t.tau_star_empirical) << ',' << (t.empirical_at_bracket_top ? 1 : 0) << ','
      << format_real(t.e1_first_step) << ',' << format_real(t.h1_initial) << '\n';
  close_output(out, config.output);
  std::cout << "alpha: " << format_real(t.alpha) << '\n'
            << "tau* (formula): " << format_real(t.tau_star_formula) << '\n'
            << "tau* (empirical): " << (t.empirical_at_bracket_top ? ">= " : "")
            << format_real(t.tau_star_empirical) << '\n';
  return kExitOk;
}

int cmd_energy_report(const RunConfig& config) {
  const SpectralField u0 = realize(config.initial, config.params.grid());
  const RealField u = inverse(u0);
  const EnergyReport e = ModifiedEnergy(config.params).report(u0, u);
  const NormSet n = norms(u, static_cast<double>(config.k0));
  std::ofstream out = open_output(config.output);
  out << "E,E1_quad,E1_pot,E1,mass,l2,l4,linf,h1,hk0\n"
      << format_real(e.e_classical) << ',' << format_real(e.e1_quadratic) << ','
      << format_real(e.e1_potential) << ',' << format_real(e.e1_total) << ','
      << format_real(e.mass) << ',' << format_real(n.l2) << ',' << format_real(n.l4) << ','
      << format_real(n.linf) << ',' << format_real(n.h1) << ',' << format_real(n.hs) << '\n';
  close_output(out, config.output);
  std::cout << "E: " << format_real(e.e_classical) << '\n'
            << "E1: " << format_real(e.e1_total) << " (quadratic " << format_real(e.e1_quadratic)
            << ", potential " << format_real(e.e1_potential) << ")\n"
            << "mass: " << format_real(e.mass) << ", linf: " << format_real(n.linf)
            << ", h1: " << format_real(n.h1) << '\n';
  report_symbol_check(config.params);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Operator-splitting Cahn-Hilliard solver and verification harness"};
  app.require_subcommand(1);

  std::string config_path;
  int snapshot_every = 0;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"simulate", "run the scheme and write per-step diagnostics"},
      {"converge", "self-convergence study over the configured taus"},
      {"kernel-study", "L^p norms of the biharmonic heat kernel against beta"},
      {"defect-study", "defect of the first step against tau"},
      {"tau-star", "threshold estimate and empirical stability threshold"},
      {"energy-report", "energies and norms of the initial field"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "key = value run configuration")->required();
    if (name == "simulate") {
      sub->add_option("--snapshot-every", snapshot_every, "write a CHF1 snapshot every k steps")
          ->check(CLI::NonNegativeNumber);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const RunConfig config = load_config(config_path);
    if (command == "simulate") return cmd_simulate(config, snapshot_every);
    if (command == "converge") return cmd_converge(config);
    if (command == "kernel-study") return cmd_kernel_study(config);
    if (command == "defect-study") return cmd_defect_study(config);
    if (command == "tau-star") return cmd_tau_star(config);
    return cmd_energy_report(config);
  } catch (const std::exception& e) {
    std::cerr << "chsplit " << command << ": " << e.what() << '\n';
    return kExitError;
  }
}
