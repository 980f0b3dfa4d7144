#include "chsplit/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chsplit/error.hpp"
#include "chsplit/fit.hpp"
#include "chsplit/fourier.hpp"
#include "chsplit/multiplier.hpp"
#include "chsplit/norms.hpp"

namespace chsplit {

int minimal_kernel_resolution(double beta) {
  if (!(beta > 0.0)) throw ValidationError("kernel beta must be positive");
  // e^{-beta m^4} < 1e-14  <=>  m > (14 ln 10 / beta)^{1/4}, with m = n / 3.
  const double m = std::pow(14.0 * std::log(10.0) / beta, 0.25);
  int n = static_cast<int>(std::ceil(3.0 * m));
  n = std::max(n, 8);
  if (n % 2) ++n;
  while (!(std::exp(-beta * std::pow(n / 3.0, 4.0)) < 1e-14)) n += 2;
  return n;
}

int kernel_study_resolution(double beta) {
  const int guard = minimal_kernel_resolution(beta);
  const double scale = 10.0 * std::pow(beta, -0.25);
  int n = 32;
  while (n < guard || n < scale) n *= 2;
  return n;
}

RealField build_kernel(double beta, KernelVariant variant, int n) {
  const int needed = minimal_kernel_resolution(beta);
  if (n < needed) {
    std::ostringstream msg;
    msg << "grid n=" << n << " does not resolve e^{-beta|k|^4} for beta=" << beta
        << "; minimal admissible n is " << needed;
    throw ValidationError(msg.str());
  }
  const Grid2D grid(n);
  SpectralField delta(grid);
  // The periodic Dirac comb has f^(k) = 1 for every k under this normalisation.
  for (Complex& c : delta.coeffs()) c = 1.0;
  const ZeroMode rule = variant == KernelVariant::full ? ZeroMode::identity : ZeroMode::annihilate;
  const MultiplierSpec heat = MultiplierSpec::radial(
      grid, [beta](double k2) { return std::exp(-beta * k2 * k2); }, rule);
  SpectralField kh = apply_multiplier(delta, heat);
  // The -n/2 modes have no conjugate partner; they are below 1e-14 by the guard anyway.
  for (int i = 0; i < n; ++i) {
    kh.coeffs()[grid.flat(n / 2, i)] = 0.0;
    kh.coeffs()[grid.flat(i, n / 2)] = 0.0;
  }
  return inverse(kh);
}

std::vector<KernelStudyResult> kernel_norm_sweep(KernelVariant variant, double p,
                                                 std::span<const double> betas) {
  if (betas.size() < 2) throw ValidationError("kernel sweep needs at least two beta values");
  const auto [lo, hi] = std::minmax_element(betas.begin(), betas.end());
  if (!(*lo > 0.0) || !(*hi < 1.0) || *hi / *lo < 100.0) {
    throw ValidationError("kernel sweep betas must lie in (0, 1) and span at least two decades");
  }
  if (!(p >= 1.0)) throw ValidationError("kernel norm exponent p must be >= 1");
  std::vector<KernelStudyResult> out;
  std::vector<double> log_beta;
  std::vector<double> log_norm;
  const double predicted = (std::isinf(p) ? -0.5 : -2.0 * (0.25 - 0.25 / p)) + 0.0;
  for (double beta : betas) {
    const RealField k = build_kernel(beta, variant, kernel_study_resolution(beta));
    KernelStudyResult r;
    r.beta = beta;
    r.p = p;
    r.norm_value = lp_norm(k, p);
    r.predicted_exponent = predicted;
    out.push_back(r);
    log_beta.push_back(std::log(beta));
    log_norm.push_back(std::log(r.norm_value));
  }
  const double slope = fit_line(log_beta, log_norm).slope;
  for (auto& r : out) r.fitted_exponent = slope;
  return out;
}

double smoothing_ratio(const RealField& g, double nu, double tau, SmoothingEstimate which) {
  if (!(nu > 0.0) || !(tau > 0.0)) throw ValidationError("smoothing_ratio: nu and tau must be positive");
  const Grid2D& grid = g.grid();
  const SpectralField gh = forward(g);
  const double beta = nu * tau;
  if (which == SmoothingEstimate::linf_from_l4) {
    if (!gh.is_mean_zero()) throw ValidationError("smoothing_ratio: g must be mean-zero");
    const double g4 = lp_norm(g, 4.0);
    if (g4 == 0.0) throw ValidationError("smoothing_ratio: g has zero norm");
    const RealField smoothed = inverse(apply_multiplier(gh, MultiplierSpec::biharmonic_heat(grid, beta)));
    return linf_norm(smoothed) / (std::pow(beta, -0.125) * g4);
  }
  const double g43 = lp_norm(g, 4.0 / 3.0);
  if (g43 == 0.0) throw ValidationError("smoothing_ratio: g has zero norm");
  const MultiplierSpec op = MultiplierSpec::radial(
      grid, [beta, tau](double k2) { return -tau * k2 * std::exp(-beta * k2 * k2); },
      ZeroMode::identity);
  const RealField smoothed = inverse(apply_multiplier(gh, op));
  return linf_norm(smoothed) / (tau * std::pow(beta, -0.875) * g43);
}

}  // namespace chsplit
