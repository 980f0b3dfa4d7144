#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "chsplit/field.hpp"

namespace chsplit {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Node-quadrature L^p norm, (spacing^2 sum |f|^p)^{1/p}; p = kInfinity gives the node max.
double lp_norm(const RealField& f, double p);
double linf_norm(const RealField& f);

/// ||f||_{H^s}^2 = (2 pi)^{-2} sum_k (1 + |k|^2)^s |f^(k)|^2.
double sobolev_norm(const SpectralField& f, double s);
/// ||f||_{Hdot^s}^2 = (2 pi)^{-2} sum_{k != 0} |k|^{2s} |f^(k)|^2. For s < 0 the field
/// must be mean-zero (ValidationError otherwise). The zero mode never contributes.
double homogeneous_sobolev_norm(const SpectralField& f, double s);

/// Tabulated (1 + |k|^2)^s for repeated H^s evaluations on one grid.
std::vector<double> sobolev_weights(const Grid2D& grid, double s);
/// sqrt((2 pi)^{-2} sum_k weights(k) |f^(k)|^2).
double weighted_norm(const SpectralField& f, std::span<const double> weights);

struct NormSet {
  double l2 = 0.0;
  double l4 = 0.0;
  double linf = 0.0;
  double h1 = 0.0;
  double hs = 0.0;  ///< H^s for the requested s
  /// Present only for mean-zero fields.
  std::optional<double> hdot_neg1;
};

NormSet norms(const RealField& f, double s = 1.0);

/// Throws ValidationError when f is not mean-zero.
double hdot_neg1_norm(const RealField& f);

/// f minus its node average.
RealField project_mean_zero(const RealField& f);

double node_mean(const RealField& f);

}  // namespace chsplit
