#include "chsplit/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chsplit/error.hpp"
#include "chsplit/fourier.hpp"

namespace chsplit {

namespace {

constexpr double kInvTwoPiSquared = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);

}  // namespace

double lp_norm(const RealField& f, double p) {
  if (!(p >= 1.0)) throw ValidationError("lp_norm: p must be >= 1");
  if (std::isinf(p)) return linf_norm(f);
  double sum = 0.0;
  if (p == 2.0) {
    for (double v : f.values()) sum += v * v;
    return std::sqrt(f.grid().weight() * sum);
  }
  for (double v : f.values()) sum += std::pow(std::abs(v), p);
  return std::pow(f.grid().weight() * sum, 1.0 / p);
}

double linf_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double sobolev_norm(const SpectralField& f, double s) {
  const Grid2D& grid = f.grid();
  double sum = 0.0;
  for (int i1 = 0; i1 < grid.n(); ++i1) {
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      const double c2 = std::norm(f.at(i1, i2));
      if (c2 == 0.0) continue;
      sum += std::pow(1.0 + grid.k_squared(i1, i2), s) * c2;
    }
  }
  return std::sqrt(kInvTwoPiSquared * sum);
}

double homogeneous_sobolev_norm(const SpectralField& f, double s) {
  if (s < 0.0 && !f.is_mean_zero()) {
    throw ValidationError("negative-order homogeneous norm requires a mean-zero field");
  }
  const Grid2D& grid = f.grid();
  double sum = 0.0;
  for (int i1 = 0; i1 < grid.n(); ++i1) {
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      const double k2 = grid.k_squared(i1, i2);
      if (k2 == 0.0) continue;
      sum += std::pow(k2, s) * std::norm(f.at(i1, i2));
    }
  }
  return std::sqrt(kInvTwoPiSquared * sum);
}

std::vector<double> sobolev_weights(const Grid2D& grid, double s) {
  std::vector<double> w(grid.size());
  for (int i1 = 0; i1 < grid.n(); ++i1) {
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      w[grid.flat(i1, i2)] = std::pow(1.0 + grid.k_squared(i1, i2), s);
    }
  }
  return w;
}

double weighted_norm(const SpectralField& f, std::span<const double> weights) {
  const auto c = f.coeffs();
  double sum = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += weights[i] * std::norm(c[i]);
  return std::sqrt(kInvTwoPiSquared * sum);
}

NormSet norms(const RealField& f, double s) {
  const SpectralField fh = forward(f);
  NormSet out;
  out.l2 = lp_norm(f, 2.0);
  out.l4 = lp_norm(f, 4.0);
  out.linf = linf_norm(f);
  out.h1 = sobolev_norm(fh, 1.0);
  out.hs = sobolev_norm(fh, s);
  if (fh.is_mean_zero()) out.hdot_neg1 = homogeneous_sobolev_norm(fh, -1.0);
  return out;
}

double hdot_neg1_norm(const RealField& f) {
  return homogeneous_sobolev_norm(forward(f), -1.0);
}

double node_mean(const RealField& f) {
  double sum = 0.0;
  for (double v : f.values()) sum += v;
  return sum / static_cast<double>(f.values().size());
}

RealField project_mean_zero(const RealField& f) {
  const double mean = node_mean(f);
  std::vector<double> out(f.values().begin(), f.values().end());
  for (double& v : out) v -= mean;
  return RealField(f.grid(), std::move(out));
}

}  // namespace chsplit
