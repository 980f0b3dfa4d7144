#include "chsplit/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "chsplit/error.hpp"
#include "chsplit/fourier.hpp"
#include "chsplit/norms.hpp"

namespace chsplit {

namespace {

constexpr double kInvTwoPiSquared = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
constexpr double kLogSpaceCutoff = 500.0;
constexpr double kBlowUp = 1e6;

bool all_finite(const SpectralField& f) {
  for (const Complex& c : f.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

}  // namespace

ModifiedEnergy::ModifiedEnergy(const SolverParams& params)
    : params_(params), grid_((params.validate(), params.grid())) {
  const int n = grid_.n();
  exponent_.resize(grid_.size());
  weight_.resize(grid_.size());
  log_denom_.resize(grid_.size());
  k_squared_.resize(grid_.size());
  const double tau = params_.tau;
  const double beta = tau * params_.nu;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const std::size_t idx = grid_.flat(i1, i2);
      const double k2 = grid_.k_squared(i1, i2);
      k_squared_[idx] = k2;
      if (k2 == 0.0) continue;
      const double x = beta * k2 * k2;
      exponent_[idx] = x;
      log_denom_[idx] = std::log(2.0 * tau * k2);
      weight_[idx] = x > kLogSpaceCutoff ? 0.0 : std::expm1(x) / (2.0 * tau * k2);
    }
  }
  h1_weight_ = sobolev_weights(grid_, 1.0);
}

double ModifiedEnergy::quadratic(const SpectralField& w) const {
  const auto c = w.coeffs();
  double sum = 0.0;
  for (std::size_t i = 1; i < c.size(); ++i) {
    const double a2 = std::norm(c[i]);
    if (a2 == 0.0 || k_squared_[i] == 0.0) continue;
    double term;
    if (exponent_[i] > kLogSpaceCutoff) {
      term = std::exp(exponent_[i] + std::log(a2) - log_denom_[i]);
    } else {
      term = weight_[i] * a2;
    }
    if (!std::isfinite(term)) {
      const int n = grid_.n();
      std::ostringstream msg;
      msg << "E1 undefined at this resolution/tau: term at k=(" << grid_.wavenumber(int(i) / n)
          << "," << grid_.wavenumber(int(i) % n) << ") is not finite";
      throw EnergyUndefined(msg.str());
    }
    sum += term;
  }
  const double total = kInvTwoPiSquared * sum;
  if (!std::isfinite(total)) throw EnergyUndefined("E1 undefined at this resolution/tau: sum overflows");
  return total;
}

double ModifiedEnergy::gradient_term(const SpectralField& u) const {
  const auto c = u.coeffs();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += k_squared_[i] * std::norm(c[i]);
  return 0.5 * params_.nu * kInvTwoPiSquared * sum;
}

double ModifiedEnergy::potential(const RealField& u) const {
  double sum = 0.0;
  for (double v : u.values()) sum += double_well(v);
  return grid_.weight() * sum;
}

EnergyReport ModifiedEnergy::report(const SpectralField& uh, const RealField& u) const {
  EnergyReport r;
  r.e1_potential = potential(u);
  r.e_classical = gradient_term(uh) + r.e1_potential;
  r.mass = uh.coeffs()[0].real();
  r.linf = linf_norm(u);
  r.h1 = weighted_norm(uh, h1_weight_);
  try {
    r.e1_quadratic = quadratic(uh);
    r.e1_total = r.e1_quadratic + r.e1_potential;
  } catch (const EnergyUndefined&) {
    r.e1_defined = false;
    r.e1_quadratic = std::numeric_limits<double>::quiet_NaN();
    r.e1_total = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

StabilityCertificate ModifiedEnergy::certify(const EnergyReport& w, const EnergyReport& u,
                                             double increment_l2, int step) const {
  StabilityCertificate cert;
  cert.step = step;
  cert.increment_l2 = increment_l2;
  const double sup2 = std::max(u.linf * u.linf, w.linf * w.linf);
  cert.rhs = 1.5 * sup2 * increment_l2;
  if (!w.e1_defined || !u.e1_defined) {
    cert.indeterminate = true;
    cert.lhs = std::numeric_limits<double>::quiet_NaN();
    return cert;
  }
  const double coercive = 0.5 + std::sqrt(2.0 * params_.nu / params_.tau);
  cert.lhs = u.e1_total - w.e1_total + coercive * increment_l2;
  cert.satisfied = cert.lhs <= cert.rhs + 1e-10 * (1.0 + std::abs(cert.lhs) + std::abs(cert.rhs));
  return cert;
}

SpectralField drop_roundoff(const SpectralField& f) {
  double largest = 0.0;
  for (const Complex& c : f.coeffs()) largest = std::max(largest, std::abs(c));
  SpectralField out = f;
  const double floor = kSpectralNoiseFloor * largest;
  for (Complex& c : out.coeffs()) {
    if (std::abs(c) <= floor) c = Complex{};
  }
  return out;
}

double classical_energy(const RealField& u, double nu) {
  if (!(nu > 0.0)) throw ValidationError("nu must be positive");
  SolverParams p;
  p.nu = nu;
  p.n = u.grid().n();
  const ModifiedEnergy energy(p);
  return energy.gradient_term(forward(u)) + energy.potential(u);
}

EnergyReport modified_energy(const RealField& w, const SolverParams& p) {
  p.validate();
  if (w.grid().n() != p.n) throw ValidationError("field grid does not match params n");
  const SpectralField wh = forward(w);
  if (!wh.is_mean_zero()) throw ValidationError("modified_energy: input must be mean-zero");
  const ModifiedEnergy energy(p);
  EnergyReport r = energy.report(drop_roundoff(wh), w);
  if (!r.e1_defined) {
    // Re-run the quadratic sum to surface the offending mode in the message.
    energy.quadratic(drop_roundoff(wh));
  }
  return r;
}

StabilityCertificate certify_step(const RealField& w, const RealField& u, const SolverParams& p,
                                  int step) {
  p.validate();
  const SpectralField wh = forward(w);
  const SpectralField uh = forward(u);
  if (!wh.is_mean_zero() || !uh.is_mean_zero()) {
    throw ValidationError("certify_step: both fields must be mean-zero");
  }
  const ModifiedEnergy energy(p);
  const EnergyReport rw = energy.report(drop_roundoff(wh), w);
  const EnergyReport ru = energy.report(drop_roundoff(uh), u);
  const double inc = lp_norm(u - w, 2.0);
  return energy.certify(rw, ru, inc * inc, step);
}

PotentialBounds potential_bounds(const RealField& v) {
  PotentialBounds b;
  const double w = v.grid().weight();
  double ep = 0.0;
  double f43 = 0.0;
  for (double x : v.values()) {
    ep += double_well(x);
    f43 += std::pow(std::abs(double_well_derivative(x)), 4.0 / 3.0);
  }
  b.e_p = w * ep;
  b.l4 = lp_norm(v, 4.0);
  b.f_l43 = std::pow(w * f43, 0.75);
  const double q = std::pow(b.e_p, 0.25);
  b.ratio_l4 = b.l4 / (1.0 + q);
  const double denom = std::sqrt(b.e_p) * (1.0 + q);
  b.ratio_f = (denom == 0.0) ? 0.0 : b.f_l43 / denom;
  return b;
}

SymbolInequalityCheck check_symbol_inequality(const SolverParams& p) {
  p.validate();
  const Grid2D grid = p.grid();
  const double rhs = std::sqrt(2.0 * p.nu / p.tau);
  SymbolInequalityCheck out;
  out.min_ratio = kInfinity;
  for (int i1 = 0; i1 < grid.n(); ++i1) {
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      const double k2 = grid.k_squared(i1, i2);
      if (k2 == 0.0) continue;
      const double x = p.tau * p.nu * k2 * k2;
      // exp overflows to +inf for large x, which still compares correctly.
      const double lhs = (std::exp(x) + 1.0) / (2.0 * p.tau * k2);
      const double ratio = lhs / rhs;
      out.min_ratio = std::min(out.min_ratio, ratio);
      if (!(lhs >= rhs)) out.holds = false;
      ++out.modes_checked;
    }
  }
  return out;
}

double threshold_alpha(double e1_first_step, double h1_initial, double nu,
                       const ThresholdConstants& k) {
  const double q = std::pow(e1_first_step, 0.25);
  const double a1 = k.c1 * (1.0 + q);
  const double a2 = k.c1 * std::sqrt(e1_first_step) * (1.0 + q);
  const double a3 = k.c0_2 * (1.0 + 1.0 / nu) * (h1_initial + h1_initial * h1_initial * h1_initial);
  return std::max({a1, a2, a3});
}

double threshold_tau_star(double alpha, double nu, double c) {
  return c * std::min(std::pow(alpha, -8.0), std::pow(alpha, -8.0 / 3.0)) * nu * nu * nu;
}

double linf_bound(double alpha, double nu, double tau) {
  const double beta = nu * tau;
  return alpha * std::pow(beta, -0.125) + alpha * tau * std::pow(beta, -0.875);
}

bool energy_decays(const SpectralField& u0, const SolverParams& p, int probe_steps) {
  SplittingScheme scheme(p);
  const ModifiedEnergy energy(p);
  const bool conjugate = p.order == SplitOrder::NL;
  SpectralField u = u0;
  double previous = 0.0;
  for (int step = 1; step <= probe_steps; ++step) {
    u = scheme.step(u);
    if (!all_finite(u)) return false;
    const SpectralField monitored = conjugate ? scheme.linear(u) : u;
    const RealField phys = scheme.to_physical(monitored);
    if (linf_norm(phys) > kBlowUp) return false;
    double e1;
    try {
      e1 = energy.quadratic(monitored) + energy.potential(phys);
    } catch (const EnergyUndefined&) {
      return false;
    }
    if (step > 1 && e1 > previous + 1e-10 * (1.0 + previous)) return false;
    previous = e1;
  }
  return true;
}

TauStarResult empirical_tau_star(const SpectralField& u0, SolverParams p,
                                 const BisectionOptions& options) {
  if (!(options.tau_lo > 0.0) || !(options.tau_hi > options.tau_lo)) {
    throw ValidationError("tau-star bracket must satisfy 0 < tau_lo < tau_hi");
  }
  if (options.probe_steps < 2) throw ValidationError("probe_steps must be >= 2");
  TauStarResult out;
  auto decays_at = [&](double tau) {
    p.tau = tau;
    ++out.probes;
    return energy_decays(u0, p, options.probe_steps);
  };
  if (!decays_at(options.tau_lo)) {
    std::ostringstream msg;
    msg << "rejected bracket: E1 does not decay at tau_lo=" << options.tau_lo;
    throw ValidationError(msg.str());
  }
  if (decays_at(options.tau_hi)) {
    out.tau_star = options.tau_hi;
    out.at_bracket_top = true;
    return out;
  }
  double lo = options.tau_lo;
  double hi = options.tau_hi;
  while (hi / lo - 1.0 > options.rel_tol) {
    const double mid = std::sqrt(lo * hi);
    if (decays_at(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.tau_star = lo;
  return out;
}

ThresholdEstimate threshold(const RealField& u0, const SolverParams& p,
                            const ThresholdConstants& constants, const BisectionOptions& options) {
  p.validate();
  const SpectralField u0h = drop_roundoff(forward(u0));
  if (!u0h.is_mean_zero()) throw ValidationError("threshold: u0 must be mean-zero");
  SolverParams first = p;
  first.order = SplitOrder::LN;
  SplittingScheme scheme(first);
  const ModifiedEnergy energy(first);
  const SpectralField u1 = scheme.step(u0h);
  ThresholdEstimate est;
  est.constants = constants;
  est.h1_initial = sobolev_norm(u0h, 1.0);
  est.e1_first_step = energy.quadratic(u1) + energy.potential(scheme.to_physical(u1));
  est.alpha = threshold_alpha(est.e1_first_step, est.h1_initial, p.nu, constants);
  est.tau_star_formula = threshold_tau_star(est.alpha, p.nu, constants.c);
  const TauStarResult bisect = empirical_tau_star(u0h, p, options);
  est.tau_star_empirical = bisect.tau_star;
  est.empirical_at_bracket_top = bisect.at_bracket_top;
  return est;
}

Calibration calibrate_constants(std::span<const SpectralField> corpus, const SolverParams& p) {
  SolverParams lp = p;
  lp.order = SplitOrder::LN;
  SplittingScheme scheme(lp);
  const ModifiedEnergy energy(lp);
  const double nu = lp.nu;
  const double tau = lp.tau;
  const double beta = nu * tau;
  Calibration cal;
  for (const SpectralField& w : corpus) {
    const RealField w_phys = scheme.to_physical(w);
    const double e1_w = energy.quadratic(w) + energy.potential(w_phys);
    const SpectralField u = scheme.step(w);
    const RealField u_phys = scheme.to_physical(u);
    const double u_inf = linf_norm(u_phys);
    const double e1_u = energy.quadratic(u) + energy.potential(u_phys);
    const double h1 = sobolev_norm(w, 1.0);

    const double q = std::pow(e1_w, 0.25);
    const double linf_shape = std::pow(beta, -0.125) * (1.0 + q) +
                              tau * std::pow(beta, -0.875) * std::sqrt(e1_w) * (1.0 + q);
    cal.c1 = std::max(cal.c1, u_inf / linf_shape);

    const double h1_poly = h1 + h1 * h1 * h1;
    if (h1_poly > 0.0) {
      cal.c0_2 = std::max(cal.c0_2, u_inf / (std::pow(beta, -0.125) * (1.0 + 1.0 / nu) * h1_poly));
    }
    const double e_shape = std::pow(1.0 + nu + 1.0 / nu, 4.0) * std::pow(1.0 + h1 * h1 * h1, 4.0);
    cal.c0_1 = std::max(cal.c0_1, e1_u / e_shape);
    ++cal.samples;
  }
  return cal;
}

}  // namespace chsplit
