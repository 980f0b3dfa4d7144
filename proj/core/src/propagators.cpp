#include "chsplit/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chsplit/error.hpp"
#include "chsplit/norms.hpp"

namespace chsplit {

void SolverParams::validate() const {
  if (!(nu > 0.0) || !std::isfinite(nu)) throw ValidationError("nu must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw ValidationError("tau must be positive (backward flow ill-posed)");
  }
  if (n < 8 || n % 2 != 0) throw ValidationError("n must be an even integer >= 8");
}

double defect_symbol(double x) {
  if (x < 0.5) {
    // sum_{m >= 2} (-1)^m (1 - m) x^m / m!
    double term = x;  // x^m / m! at m = 1
    double sum = 0.0;
    for (int m = 2; m < 40; ++m) {
      term *= x / m;
      const double contribution = ((m & 1) ? -1.0 : 1.0) * (1.0 - m) * term;
      sum += contribution;
      if (std::abs(contribution) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return (1.0 + x) * std::exp(-x) - 1.0;
}

SplittingScheme::SplittingScheme(const SolverParams& params)
    : params_(params), grid_((params.validate(), params.grid())), transform_(&transform_for(grid_)) {
  const int n = grid_.n();
  decay_.resize(grid_.size());
  k_squared_.resize(grid_.size());
  band_.resize(grid_.size());
  scratch_.resize(grid_.size());
  const double beta = params_.tau * params_.nu;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const std::size_t idx = grid_.flat(i1, i2);
      const double k2 = grid_.k_squared(i1, i2);
      k_squared_[idx] = k2;
      decay_[idx] = std::exp(-beta * k2 * k2);
      const bool keep = params_.dealias == Dealias::two_thirds ? grid_.in_two_thirds_band(i1, i2)
                                                               : !grid_.is_nyquist(i1, i2);
      band_[idx] = keep ? 1.0 : 0.0;
    }
  }
}

SpectralField SplittingScheme::linear(const SpectralField& w) const {
  SpectralField out = w;
  auto c = out.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= decay_[i];
  return out;
}

SpectralField SplittingScheme::linear(const SpectralField& w, double t) const {
  if (t < 0.0) throw ValidationError("step_linear: t must be >= 0 (backward biharmonic flow is ill-posed)");
  if (t == params_.tau) return linear(w);
  SpectralField out = w;
  auto c = out.coeffs();
  const double beta = t * params_.nu;
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] *= std::exp(-beta * k_squared_[i] * k_squared_[i]);
  }
  return out;
}

SpectralField SplittingScheme::nonlinearity(const SpectralField& w) {
  SpectralField cube(grid_);
  auto c = cube.coeffs();
  const auto src = w.coeffs();
  if (params_.dealias == Dealias::two_thirds) {
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = band_[i] * src[i];
    transform_->inverse(c, scratch_);
  } else {
    transform_->inverse(src, scratch_);
  }
  for (double& v : scratch_) v = v * v * v;
  transform_->forward(scratch_, c);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = band_[i] * c[i] - src[i];
  return cube;
}

SpectralField SplittingScheme::nonlinear(const SpectralField& w) {
  SpectralField out = nonlinearity(w);
  auto c = out.coeffs();
  const auto src = w.coeffs();
  const double tau = params_.tau;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = src[i] - tau * k_squared_[i] * c[i];
  return out;
}

SpectralField SplittingScheme::step(const SpectralField& u) {
  if (params_.order == SplitOrder::LN) return linear(nonlinear(u));
  return nonlinear(linear(u));
}

SpectralField SplittingScheme::resolvent(const SpectralField& u) {
  SpectralField out = nonlinear(u);
  auto c = out.coeffs();
  const double beta = params_.tau * params_.nu;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double k4 = k_squared_[i] * k_squared_[i];
    c[i] /= 1.0 + beta * k4;
  }
  return out;
}

SpectralField SplittingScheme::defect(const SpectralField& u) {
  // (1 + x)(e^{-x} - (1 + x)^{-1}) collapses to the single symbol (1 + x) e^{-x} - 1.
  SpectralField out = nonlinear(u);
  auto c = out.coeffs();
  const double beta = params_.tau * params_.nu;
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] *= defect_symbol(beta * k_squared_[i] * k_squared_[i]);
  }
  return out;
}

RealField SplittingScheme::to_physical(const SpectralField& f) {
  std::vector<double> values(grid_.size());
  transform_->inverse(f.coeffs(), values);
  return RealField(grid_, std::move(values));
}

SpectralField SplittingScheme::to_spectral(const RealField& f) {
  SpectralField out(grid_);
  transform_->forward(f.values(), out.coeffs());
  return out;
}

double SplittingScheme::max_linear_amplification() const {
  const double beta = params_.tau * params_.nu;
  double worst = 0.0;
  for (std::size_t i = 0; i < decay_.size(); ++i) {
    const double k2 = k_squared_[i];
    worst = std::max(worst, (1.0 + beta * k2) * std::exp(-beta * k2 * k2));
  }
  return worst;
}

namespace {

void require_mean_zero(const SpectralField& f, const char* op) {
  if (!f.is_mean_zero()) {
    std::ostringstream msg;
    msg << op << ": input must be mean-zero";
    throw ValidationError(msg.str());
  }
}

void require_grid(const RealField& f, const SolverParams& p) {
  if (f.grid().n() != p.n) {
    throw ValidationError("field grid n=" + std::to_string(f.grid().n()) +
                          " does not match params n=" + std::to_string(p.n));
  }
}

}  // namespace

RealField step_linear(const RealField& w, const SolverParams& p, double t) {
  require_grid(w, p);
  SplittingScheme scheme(p);
  return scheme.to_physical(scheme.linear(scheme.to_spectral(w), t));
}

RealField step_nonlinear(const RealField& w, const SolverParams& p) {
  require_grid(w, p);
  SplittingScheme scheme(p);
  return scheme.to_physical(scheme.nonlinear(scheme.to_spectral(w)));
}

RealField step_composed(const RealField& u, const SolverParams& p) {
  require_grid(u, p);
  SplittingScheme scheme(p);
  const SpectralField uh = scheme.to_spectral(u);
  require_mean_zero(uh, "step_composed");
  return scheme.to_physical(scheme.step(uh));
}

RealField resolvent_step(const RealField& u, const SolverParams& p) {
  require_grid(u, p);
  SplittingScheme scheme(p);
  const SpectralField uh = scheme.to_spectral(u);
  require_mean_zero(uh, "resolvent_step");
  return scheme.to_physical(scheme.resolvent(uh));
}

DefectReport compute_defect(const RealField& u, const SolverParams& p, double d1, int step) {
  require_grid(u, p);
  SplittingScheme scheme(p);
  const SpectralField uh = scheme.to_spectral(u);
  require_mean_zero(uh, "compute_defect");
  DefectReport report;
  report.step = step;
  report.d1 = d1;
  report.defect_l2 = scheme.defect(uh).l2_norm();
  report.h8 = sobolev_norm(uh, 8.0);
  const double scale = p.tau * p.tau * (report.h8 + report.h8 * report.h8 * report.h8);
  report.bound_rhs = d1 * scale;
  report.ratio = scale > 0.0 ? report.defect_l2 / scale : 0.0;
  return report;
}

}  // namespace chsplit
