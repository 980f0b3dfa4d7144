#pragma once

#include <span>
#include <vector>

#include "chsplit/field.hpp"
#include "chsplit/propagators.hpp"

namespace chsplit {

/// Double-well potential F(u) = (u^2 - 1)^2 / 4.
constexpr double double_well(double u) noexcept {
  const double s = u * u - 1.0;
  return 0.25 * s * s;
}

/// f(u) = F'(u) = u^3 - u.
constexpr double double_well_derivative(double u) noexcept { return u * u * u - u; }

struct EnergyReport {
  double e_classical = 0.0;
  double e1_quadratic = 0.0;
  double e1_potential = 0.0;
  double e1_total = 0.0;
  double mass = 0.0;
  double linf = 0.0;
  double h1 = 0.0;
  /// False when a quadratic term of E_1 is not finite at this resolution and tau.
  bool e1_defined = true;
};

/// Both sides of the one-step energy inequality for the pair w -> u.
struct StabilityCertificate {
  int step = 0;
  double lhs = 0.0;  ///< E1(u) - E1(w) + (1/2 + sqrt(2 nu / tau)) ||u - w||_2^2
  double rhs = 0.0;  ///< (3/2) max(||u||_inf^2, ||w||_inf^2) ||u - w||_2^2
  double increment_l2 = 0.0;  ///< ||u - w||_2^2
  bool satisfied = false;
  bool indeterminate = false;
};

/// Tabulated evaluator of E(u) and the modified energy
///   E1(w) = (1 / 2 tau) || |grad|^{-1} (e^{tau nu Delta^2} - 1)^{1/2} w ||_2^2 + (1/4) \int (w^2 - 1)^2
/// for one (nu, tau, n).
///
/// Quadratic terms with tau nu |k|^4 > 500 are summed in log space so that spectra
/// damped by e^{-tau nu |k|^4} stay finite; modes with a zero coefficient contribute 0.
class ModifiedEnergy {
 public:
  explicit ModifiedEnergy(const SolverParams& params);

  const SolverParams& params() const noexcept { return params_; }

  /// Throws EnergyUndefined if some term is not finite.
  double quadratic(const SpectralField& w) const;
  /// (nu / 2) ||grad u||_2^2 through Parseval.
  double gradient_term(const SpectralField& u) const;
  /// (1/4) \int (u^2 - 1)^2 by node quadrature.
  double potential(const RealField& u) const;

  /// Full report from matching spectral and nodal representations. Never throws on
  /// an undefined E1; the report is flagged instead.
  EnergyReport report(const SpectralField& uh, const RealField& u) const;

  StabilityCertificate certify(const EnergyReport& w, const EnergyReport& u, double increment_l2,
                               int step) const;

 private:
  SolverParams params_;
  Grid2D grid_;
  std::vector<double> exponent_;   // tau nu |k|^4
  std::vector<double> weight_;     // expm1(x) / (2 tau |k|^2), 0 at k = 0 or when x > 500
  std::vector<double> log_denom_;  // log(2 tau |k|^2)
  std::vector<double> k_squared_;
  std::vector<double> h1_weight_;
};

/// Coefficients below this fraction of the largest one are treated as transform
/// round-off when E1 is evaluated from nodal values.
inline constexpr double kSpectralNoiseFloor = 1e-13;

/// Zeroes coefficients below kSpectralNoiseFloor * max |coefficient|.
SpectralField drop_roundoff(const SpectralField& f);

double classical_energy(const RealField& u, double nu);

/// Throws ValidationError for non-mean-zero w, EnergyUndefined if E1 is not finite.
EnergyReport modified_energy(const RealField& w, const SolverParams& p);

/// Certificate for a step w -> u given in nodal form. Indeterminate if E1 is undefined.
StabilityCertificate certify_step(const RealField& w, const RealField& u, const SolverParams& p,
                                  int step = 0);

struct PotentialBounds {
  double e_p = 0.0;        ///< (1/4) \int (v^2 - 1)^2
  double l4 = 0.0;         ///< ||v||_4
  double f_l43 = 0.0;      ///< ||v^3 - v||_{4/3}
  double ratio_l4 = 0.0;   ///< ||v||_4 / (1 + e_p^{1/4})
  double ratio_f = 0.0;    ///< ||v^3 - v||_{4/3} / (e_p^{1/2} (1 + e_p^{1/4})), 0/0 read as 0
};

PotentialBounds potential_bounds(const RealField& v);

/// For every lattice k != 0: (e^{x} + 1) / (2 tau |k|^2) >= sqrt(2 nu / tau), x = tau nu |k|^4.
struct SymbolInequalityCheck {
  bool holds = true;
  double min_ratio = 0.0;  ///< min over k of lhs / rhs
  long modes_checked = 0;
};
SymbolInequalityCheck check_symbol_inequality(const SolverParams& p);

/// Unspecified absolute constants in the threshold estimates; all default to 1.
struct ThresholdConstants {
  double c = 1.0;
  double c1 = 1.0;
  double c0_1 = 1.0;
  double c0_2 = 1.0;
};

struct BisectionOptions {
  int probe_steps = 200;
  double tau_lo = 1e-6;
  double tau_hi = 1.0;
  double rel_tol = 0.02;
};

struct TauStarResult {
  double tau_star = 0.0;
  /// Decay held at tau_hi, so tau_star is only a lower bound.
  bool at_bracket_top = false;
  int probes = 0;
};

struct ThresholdEstimate {
  double alpha = 0.0;
  double tau_star_formula = 0.0;
  double tau_star_empirical = 0.0;
  bool empirical_at_bracket_top = false;
  double e1_first_step = 0.0;  ///< E1(u^1)
  double h1_initial = 0.0;     ///< ||u^0||_{H^1}
  ThresholdConstants constants;
};

/// max{c1 (1 + E^{1/4}), c1 E^{1/2} (1 + E^{1/4}), c0_2 (1 + 1/nu)(h1 + h1^3)} with E = E1(u^1).
double threshold_alpha(double e1_first_step, double h1_initial, double nu,
                       const ThresholdConstants& k);
/// c min{alpha^{-8}, alpha^{-8/3}} nu^3.
double threshold_tau_star(double alpha, double nu, double c);
/// alpha (nu tau)^{-1/8} + alpha tau (nu tau)^{-7/8}.
double linf_bound(double alpha, double nu, double tau);

/// E1(u^{n+1}) <= E1(u^n) + 1e-10 (1 + E1(u^n)) for 1 <= n < probe_steps. Under order NL the
/// energy is read on S_L(tau) u^n, which obeys the LN recursion.
bool energy_decays(const SpectralField& u0, const SolverParams& p, int probe_steps);

/// Largest tau in [tau_lo, tau_hi] (to rel_tol) with energy_decays(). Throws ValidationError
/// if decay already fails at tau_lo.
TauStarResult empirical_tau_star(const SpectralField& u0, SolverParams p,
                                 const BisectionOptions& options);

ThresholdEstimate threshold(const RealField& u0, const SolverParams& p,
                            const ThresholdConstants& constants, const BisectionOptions& options);

/// Largest observed ratios in the first-step and L^inf bounds over a corpus of
/// mean-zero initial fields. Each is a lower bound for the matching absolute constant.
struct Calibration {
  double c1 = 0.0;
  double c0_1 = 0.0;
  double c0_2 = 0.0;
  int samples = 0;
};
Calibration calibrate_constants(std::span<const SpectralField> corpus, const SolverParams& p);

}  // namespace chsplit
