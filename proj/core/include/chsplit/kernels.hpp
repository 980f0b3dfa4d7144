#pragma once

#include <span>
#include <vector>

#include "chsplit/field.hpp"

namespace chsplit {

/// K = F^{-1}(e^{-beta |k|^4}) or its mean-zero part K~ = F^{-1}(e^{-beta |k|^4} 1_{k != 0}).
enum class KernelVariant { full, mean_zero };

/// Smallest even n with e^{-beta (n/3)^4} < 1e-14.
int minimal_kernel_resolution(double beta);

/// Grid size used by kernel sweeps: the resolution guard and n >= 10 beta^{-1/4},
/// rounded up to a power of two and never below 32.
int kernel_study_resolution(double beta);

/// Nodal values of the periodic biharmonic heat kernel. Throws ValidationError naming
/// the minimal admissible n when the grid does not resolve e^{-beta |k|^4}.
RealField build_kernel(double beta, KernelVariant variant, int n);

struct KernelStudyResult {
  double beta = 0.0;
  double p = 0.0;
  double norm_value = 0.0;
  double predicted_exponent = 0.0;  ///< -2 (1/4 - 1/(4p))
  double fitted_exponent = 0.0;     ///< slope of log ||K||_p vs log beta over the sweep
};

/// ||K||_{L^p} for each beta with the sweep-wide least-squares exponent. The betas must lie
/// in (0, 1) and span at least two decades.
std::vector<KernelStudyResult> kernel_norm_sweep(KernelVariant variant, double p,
                                                 std::span<const double> betas);

enum class SmoothingEstimate {
  linf_from_l4,              ///< ||e^{-nu tau Delta^2} g||_inf / ((nu tau)^{-1/8} ||g||_4)
  laplacian_linf_from_l43,   ///< ||tau Delta e^{-nu tau Delta^2} g||_inf / (tau (nu tau)^{-7/8} ||g||_{4/3})
};

/// Left side over the constant-free right side; an empirical lower bound on C_1 or C_2.
double smoothing_ratio(const RealField& g, double nu, double tau, SmoothingEstimate which);

}  // namespace chsplit
