#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chsplit/energy.hpp"
#include "chsplit/initial_data.hpp"
#include "chsplit/propagators.hpp"

namespace chsplit {

/// Diagnostics of one state u^n, plus the certificate for the step that produced it.
///
/// The E1 columns, increment and certificate describe the monitored sequence: u^n itself
/// under order LN, and S_L(tau) u^n under order NL (that sequence obeys the LN recursion,
/// while u^n itself ends on an explicit substep whose high modes make E1 diverge).
struct StepRecord {
  int step = 0;
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double e1_quadratic = 0.0;
  double e1_potential = 0.0;
  double e1 = 0.0;
  double linf = 0.0;
  double h1 = 0.0;
  double hk0 = 0.0;
  double increment_l2 = 0.0;
  double cert_lhs = 0.0;
  double cert_rhs = 0.0;
  bool cert_ok = false;
  bool cert_indeterminate = false;
};

struct RunOptions {
  int steps = 100;
  int k0 = 2;
  double blowup_threshold = 1e6;
  int snapshot_every = 0;
  /// Called with (step, u^step) every snapshot_every steps and at step 0.
  std::function<void(int, const RealField&)> on_snapshot;
};

struct RunDiagnostics {
  SolverParams params;
  int k0 = 2;
  StepRecord initial;  ///< u^0; certificate fields unused
  std::vector<StepRecord> records;  ///< steps 1..steps (fewer if the run blew up)
  bool unstable = false;
  int unstable_step = -1;
};

RunDiagnostics run(const SpectralField& u0, const SolverParams& p, const RunOptions& options);
RunDiagnostics run(const InitialDataSpec& u0, const SolverParams& p, const RunOptions& options);

struct ConvergenceStudy {
  std::vector<double> taus;
  std::vector<double> errors;  ///< sup_{n >= 1, n tau <= T} ||u^n_tau - u_ref(n tau)||_2
  double fitted_order = 0.0;
  double horizon = 0.0;
  double tau_ref = 0.0;
  std::string reference_spec;
};

struct ConvergenceOptions {
  double ref_divisor = 32.0;
  /// Reference order; defaults to the order under test.
  std::optional<SplitOrder> reference_order;
};

/// Self-convergence against the same grid and dealiasing at tau_ref = min(taus) / ref_divisor.
/// Rejects taus that do not divide T, fewer than 4 taus, or ref_divisor < 32.
ConvergenceStudy convergence_study(const SpectralField& u0, const SolverParams& p, double horizon,
                                   std::span<const double> taus,
                                   const ConvergenceOptions& options = {});
ConvergenceStudy convergence_study(const InitialDataSpec& u0, const SolverParams& p, double horizon,
                                   std::span<const double> taus,
                                   const ConvergenceOptions& options = {});

struct DefectRateStudy {
  std::vector<DefectReport> reports;  ///< one per tau, for u^0
  double slope = 0.0;  ///< NaN when some defect vanishes
};

DefectRateStudy defect_rate_study(const SpectralField& u0, const SolverParams& p,
                                  std::span<const double> taus, double d1 = 1.0);
DefectRateStudy defect_rate_study(const InitialDataSpec& u0, const SolverParams& p,
                                  std::span<const double> taus, double d1 = 1.0);

TauStarResult tau_star_bisection(const InitialDataSpec& u0, const SolverParams& p,
                                 const BisectionOptions& options);

/// Runs fn(0..count-1) across hardware threads. fn must only touch state owned by its index.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace chsplit
