#pragma once

#include <vector>

#include "chsplit/field.hpp"
#include "chsplit/fourier.hpp"

namespace chsplit {

enum class Dealias { none, two_thirds };

/// LN advances by S_L(tau) S_N(tau); NL by S_N(tau) S_L(tau).
enum class SplitOrder { LN, NL };

struct SolverParams {
  double nu = 1.0;
  double tau = 1e-3;
  int n = 64;
  Dealias dealias = Dealias::two_thirds;
  SplitOrder order = SplitOrder::LN;

  /// Throws ValidationError unless nu > 0, tau > 0 and n is even and >= 8.
  void validate() const;
  Grid2D grid() const { return Grid2D(n); }
};

/// Size of the defect that separates one splitting step from an implicit-Euler step.
struct DefectReport {
  int step = 0;
  double defect_l2 = 0.0;  ///< ||g^n||_2
  double h8 = 0.0;         ///< ||u^n||_{H^8}
  double d1 = 1.0;
  double bound_rhs = 0.0;  ///< d1 tau^2 (||u^n||_{H^8} + ||u^n||_{H^8}^3)
  /// ||g^n||_2 / (tau^2 (||u^n||_{H^8} + ||u^n||_{H^8}^3)); 0 when u^n = 0.
  double ratio = 0.0;
};

/// (1 + x) e^{-x} - 1, accurate for small x. Symbol of (1 + tau nu Delta^2)(S_L - resolvent).
double defect_symbol(double x);

/// Spectral-space implementation of the splitting scheme for one parameter set.
///
/// Holds the tabulated symbols and a transform workspace; an instance is cheap to
/// step repeatedly but must stay on one thread.
class SplittingScheme {
 public:
  explicit SplittingScheme(const SolverParams& params);

  const SolverParams& params() const noexcept { return params_; }
  const Grid2D& grid() const noexcept { return grid_; }

  /// S_L(tau).
  SpectralField linear(const SpectralField& w) const;
  /// S_L(t) for t >= 0.
  SpectralField linear(const SpectralField& w, double t) const;
  /// S_N(tau) w = w + tau Delta (w^3 - w).
  SpectralField nonlinear(const SpectralField& w);
  /// One step in the configured order.
  SpectralField step(const SpectralField& u);
  /// (1 + tau nu Delta^2)^{-1} (u + tau Delta f(u)).
  SpectralField resolvent(const SpectralField& u);
  /// g^n, the remainder turning resolvent() into the LN splitting step.
  SpectralField defect(const SpectralField& u);

  /// f(w) = w^3 - w in spectral form, with the cube dealiased per params and the
  /// -n/2 modes cleared.
  SpectralField nonlinearity(const SpectralField& w);

  RealField to_physical(const SpectralField& f);
  SpectralField to_spectral(const RealField& f);

  /// sup_k (1 + tau nu |k|^2) e^{-tau nu |k|^4} over the lattice.
  double max_linear_amplification() const;

 private:
  SolverParams params_;
  Grid2D grid_;
  FourierTransform* transform_;
  std::vector<double> decay_;      // e^{-tau nu |k|^4}
  std::vector<double> k_squared_;  // |k|^2
  std::vector<double> band_;       // 1 inside the retained band, 0 outside
  std::vector<double> scratch_;
};

RealField step_linear(const RealField& w, const SolverParams& p, double t);
RealField step_nonlinear(const RealField& w, const SolverParams& p);
/// Requires a mean-zero input.
RealField step_composed(const RealField& u, const SolverParams& p);
/// Requires a mean-zero input.
RealField resolvent_step(const RealField& u, const SolverParams& p);
/// Requires a mean-zero input.
DefectReport compute_defect(const RealField& u, const SolverParams& p, double d1 = 1.0,
                            int step = 0);

}  // namespace chsplit
