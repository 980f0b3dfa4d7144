#include "chsplit/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "chsplit/error.hpp"
#include "chsplit/fit.hpp"
#include "chsplit/norms.hpp"

namespace chsplit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool all_finite(const SpectralField& f) {
  for (const Complex& c : f.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

double squared_distance(const SpectralField& a, const SpectralField& b) {
  const auto x = a.coeffs();
  const auto y = b.coeffs();
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += std::norm(x[i] - y[i]);
  return sum / (4.0 * std::numbers::pi * std::numbers::pi);
}

const char* order_name(SplitOrder order) { return order == SplitOrder::LN ? "LN" : "NL"; }

/// Nodal state, the sequence whose E1 is monitored, and their reports.
struct MonitoredState {
  SpectralField u;
  RealField u_phys;
  SpectralField m;
  RealField m_phys;
  EnergyReport m_report;
};

class RunLoop {
 public:
  RunLoop(const SolverParams& p, int k0)
      : scheme_(p),
        energy_(p),
        conjugate_(p.order == SplitOrder::NL),
        h1_weights_(sobolev_weights(p.grid(), 1.0)),
        hk0_weights_(sobolev_weights(p.grid(), static_cast<double>(k0))) {}

  SplittingScheme& scheme() { return scheme_; }

  MonitoredState observe(const SpectralField& u) {
    RealField phys = scheme_.to_physical(u);
    SpectralField m = conjugate_ ? scheme_.linear(u) : u;
    RealField m_phys = conjugate_ ? scheme_.to_physical(m) : phys;
    EnergyReport rep = energy_.report(m, m_phys);
    return MonitoredState{u, std::move(phys), std::move(m), std::move(m_phys), rep};
  }

  StepRecord describe(const MonitoredState& s, int step, double tau) const {
    StepRecord r;
    r.step = step;
    r.time = step * tau;
    r.mass = s.u.coeffs()[0].real();
    r.energy = conjugate_ ? energy_.gradient_term(s.u) + energy_.potential(s.u_phys)
                          : s.m_report.e_classical;
    r.e1_quadratic = s.m_report.e1_quadratic;
    r.e1_potential = s.m_report.e1_potential;
    r.e1 = s.m_report.e1_total;
    r.linf = linf_norm(s.u_phys);
    r.h1 = weighted_norm(s.u, h1_weights_);
    r.hk0 = weighted_norm(s.u, hk0_weights_);
    return r;
  }

  StabilityCertificate certify(const MonitoredState& before, const MonitoredState& after, int step) const {
    return energy_.certify(before.m_report, after.m_report, squared_distance(after.m, before.m), step);
  }

 private:
  SplittingScheme scheme_;
  ModifiedEnergy energy_;
  bool conjugate_;
  std::vector<double> h1_weights_;
  std::vector<double> hk0_weights_;
};

std::vector<int> steps_per_horizon(double horizon, std::span<const double> taus) {
  std::vector<int> out;
  for (double tau : taus) {
    if (!(tau > 0.0)) throw ValidationError("convergence taus must be positive");
    const double ratio = horizon / tau;
    const double steps = std::round(ratio);
    if (steps < 1.0 || std::abs(steps * tau - horizon) > 1e-12 * horizon) {
      std::ostringstream msg;
      msg << "tau=" << tau << " does not divide T=" << horizon;
      throw ValidationError(msg.str());
    }
    out.push_back(static_cast<int>(steps));
  }
  return out;
}

}  // namespace

RunDiagnostics run(const SpectralField& u0, const SolverParams& p, const RunOptions& options) {
  p.validate();
  if (options.steps < 1) throw ValidationError("steps must be >= 1");
  if (u0.grid().n() != p.n) throw ValidationError("initial field grid does not match params n");
  if (!u0.is_mean_zero()) throw ValidationError("initial field must be mean-zero");

  RunLoop loop(p, options.k0);
  RunDiagnostics diag;
  diag.params = p;
  diag.k0 = options.k0;
  diag.records.reserve(options.steps);

  MonitoredState current = loop.observe(u0);
  diag.initial = loop.describe(current, 0, p.tau);
  if (options.on_snapshot) options.on_snapshot(0, current.u_phys);

  for (int step = 1; step <= options.steps; ++step) {
    SpectralField next = loop.scheme().step(current.u);
    if (!all_finite(next)) {
      StepRecord r;
      r.step = step;
      r.time = step * p.tau;
      r.mass = r.energy = r.e1_quadratic = r.e1_potential = r.e1 = kNaN;
      r.h1 = r.hk0 = r.increment_l2 = r.cert_lhs = r.cert_rhs = kNaN;
      r.linf = std::numeric_limits<double>::infinity();
      diag.records.push_back(r);
      diag.unstable = true;
      diag.unstable_step = step;
      break;
    }
    MonitoredState after = loop.observe(next);
    StepRecord r = loop.describe(after, step, p.tau);
    const StabilityCertificate cert = loop.certify(current, after, step);
    r.increment_l2 = cert.increment_l2;
    r.cert_lhs = cert.lhs;
    r.cert_rhs = cert.rhs;
    r.cert_ok = cert.satisfied;
    r.cert_indeterminate = cert.indeterminate;
    diag.records.push_back(r);
    if (options.on_snapshot && options.snapshot_every > 0 && step % options.snapshot_every == 0) {
      options.on_snapshot(step, after.u_phys);
    }
    if (r.linf > options.blowup_threshold) {
      diag.unstable = true;
      diag.unstable_step = step;
      break;
    }
    current = std::move(after);
  }
  return diag;
}

RunDiagnostics run(const InitialDataSpec& u0, const SolverParams& p, const RunOptions& options) {
  p.validate();
  return run(realize(u0, p.grid()), p, options);
}

ConvergenceStudy convergence_study(const SpectralField& u0, const SolverParams& p, double horizon,
                                   std::span<const double> taus, const ConvergenceOptions& options) {
  p.validate();
  if (!(horizon > 0.0)) throw ValidationError("convergence horizon T must be positive");
  if (taus.size() < 4) throw ValidationError("convergence study needs at least 4 taus");
  if (options.ref_divisor < 32.0) throw ValidationError("reference divisor must be >= 32");
  if (!u0.is_mean_zero()) throw ValidationError("initial field must be mean-zero");
  const std::vector<int> coarse_steps = steps_per_horizon(horizon, taus);

  const double tau_min = *std::min_element(taus.begin(), taus.end());
  const double tau_ref = tau_min / options.ref_divisor;
  const std::vector<double> ref_tau{tau_ref};
  const int ref_steps = steps_per_horizon(horizon, ref_tau).front();

  std::vector<int> stride;
  for (int s : coarse_steps) {
    if (ref_steps % s != 0) throw ValidationError("reference step must divide every tau");
    stride.push_back(ref_steps / s);
  }

  SolverParams ref_params = p;
  ref_params.tau = tau_ref;
  ref_params.order = options.reference_order.value_or(p.order);
  SplittingScheme reference(ref_params);

  std::vector<SplittingScheme> coarse;
  std::vector<SpectralField> states;
  coarse.reserve(taus.size());
  for (double tau : taus) {
    SolverParams cp = p;
    cp.tau = tau;
    coarse.emplace_back(cp);
    states.push_back(u0);
  }

  ConvergenceStudy study;
  study.taus.assign(taus.begin(), taus.end());
  study.errors.assign(taus.size(), 0.0);
  study.horizon = horizon;
  study.tau_ref = tau_ref;
  std::ostringstream spec;
  spec << "self-convergence: order " << order_name(ref_params.order) << ", tau_ref=" << tau_ref
       << " (" << ref_steps << " steps), n=" << p.n << ", dealias="
       << (p.dealias == Dealias::two_thirds ? "two-thirds" : "none");
  study.reference_spec = spec.str();

  SpectralField ref_state = u0;
  for (int s = 1; s <= ref_steps; ++s) {
    ref_state = reference.step(ref_state);
    for (std::size_t j = 0; j < taus.size(); ++j) {
      if (s % stride[j] != 0) continue;
      states[j] = coarse[j].step(states[j]);
      const double err = std::sqrt(squared_distance(states[j], ref_state));
      if (!std::isfinite(err)) {
        study.errors[j] = kNaN;
      } else if (!std::isnan(study.errors[j])) {
        study.errors[j] = std::max(study.errors[j], err);
      }
    }
  }
  study.fitted_order = log_log_slope(study.taus, study.errors);
  return study;
}

ConvergenceStudy convergence_study(const InitialDataSpec& u0, const SolverParams& p, double horizon,
                                   std::span<const double> taus, const ConvergenceOptions& options) {
  p.validate();
  return convergence_study(realize(u0, p.grid()), p, horizon, taus, options);
}

DefectRateStudy defect_rate_study(const SpectralField& u0, const SolverParams& p,
                                  std::span<const double> taus, double d1) {
  p.validate();
  if (taus.size() < 5) throw ValidationError("defect rate study needs at least 5 taus");
  if (!u0.is_mean_zero()) throw ValidationError("initial field must be mean-zero");
  DefectRateStudy study;
  const double h8 = sobolev_norm(u0, 8.0);
  bool any_zero = false;
  std::vector<double> defects;
  for (double tau : taus) {
    SolverParams q = p;
    q.tau = tau;
    SplittingScheme scheme(q);
    DefectReport r;
    r.d1 = d1;
    r.h8 = h8;
    r.defect_l2 = scheme.defect(u0).l2_norm();
    const double scale = tau * tau * (h8 + h8 * h8 * h8);
    r.bound_rhs = d1 * scale;
    r.ratio = scale > 0.0 ? r.defect_l2 / scale : 0.0;
    any_zero = any_zero || r.defect_l2 == 0.0;
    defects.push_back(r.defect_l2);
    study.reports.push_back(r);
  }
  study.slope = any_zero ? kNaN : log_log_slope(taus, defects);
  return study;
}

DefectRateStudy defect_rate_study(const InitialDataSpec& u0, const SolverParams& p,
                                  std::span<const double> taus, double d1) {
  p.validate();
  return defect_rate_study(realize(u0, p.grid()), p, taus, d1);
}

TauStarResult tau_star_bisection(const InitialDataSpec& u0, const SolverParams& p,
                                 const BisectionOptions& options) {
  p.validate();
  return empirical_tau_star(realize(u0, p.grid()), p, options);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace chsplit
