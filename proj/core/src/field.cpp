#include "chsplit/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chsplit/error.hpp"

namespace chsplit {

namespace {

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (!(a == b)) {
    throw ValidationError("field grids differ: n=" + std::to_string(a.n()) +
                          " vs n=" + std::to_string(b.n()));
  }
}

}  // namespace

RealField::RealField(Grid2D grid) : grid_(grid), values_(grid.size(), 0.0) {}

RealField::RealField(Grid2D grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw ValidationError("field has " + std::to_string(values_.size()) + " values, grid needs " +
                          std::to_string(grid_.size()));
  }
  for (std::size_t idx = 0; idx < values_.size(); ++idx) {
    if (!std::isfinite(values_[idx])) {
      const int n = grid_.n();
      throw ValidationError("non-finite value at node (" + std::to_string(idx / n) + ", " +
                            std::to_string(idx % n) + ")");
    }
  }
}

RealField RealField::sample(Grid2D grid, const std::function<double(double, double)>& fn) {
  std::vector<double> values(grid.size());
  for (int i1 = 0; i1 < grid.n(); ++i1) {
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      values[grid.flat(i1, i2)] = fn(grid.node(i1), grid.node(i2));
    }
  }
  return RealField(grid, std::move(values));
}

SpectralField::SpectralField(Grid2D grid) : grid_(grid), coeffs_(grid.size(), Complex{}) {}

SpectralField::SpectralField(Grid2D grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size()) {
    throw ValidationError("spectral field has " + std::to_string(coeffs_.size()) +
                          " coefficients, grid needs " + std::to_string(grid_.size()));
  }
}

double SpectralField::l2_norm() const noexcept {
  double sum = 0.0;
  for (const Complex& c : coeffs_) sum += std::norm(c);
  return std::sqrt(sum) / (2.0 * std::numbers::pi);
}

double SpectralField::hermitian_defect() const noexcept {
  const int n = grid_.n();
  double worst = 0.0;
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const Complex c = coeffs_[grid_.flat(i1, i2)];
      const Complex m = coeffs_[grid_.flat(grid_.mirror(i1), grid_.mirror(i2))];
      worst = std::max(worst, std::abs(m - std::conj(c)));
    }
  }
  return worst;
}

bool SpectralField::is_mean_zero() const noexcept {
  // |f^(0)| / (2 pi) is the zero mode's share of the L2 norm.
  const double zero_share = std::abs(coeffs_[0]) / (2.0 * std::numbers::pi);
  return zero_share <= 1e-12 * std::max(l2_norm(), 1.0);
}

RealField operator+(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<double> out(a.values().begin(), a.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.values()[i];
  return RealField(a.grid(), std::move(out));
}

RealField operator-(const RealField& a, const RealField& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<double> out(a.values().begin(), a.values().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.values()[i];
  return RealField(a.grid(), std::move(out));
}

RealField operator*(double s, const RealField& a) {
  std::vector<double> out(a.values().begin(), a.values().end());
  for (double& v : out) v *= s;
  return RealField(a.grid(), std::move(out));
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<Complex> out(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.coeffs()[i];
  return SpectralField(a.grid(), std::move(out));
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a.grid(), b.grid());
  std::vector<Complex> out(a.coeffs().begin(), a.coeffs().end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.coeffs()[i];
  return SpectralField(a.grid(), std::move(out));
}

SpectralField operator*(double s, const SpectralField& a) {
  std::vector<Complex> out(a.coeffs().begin(), a.coeffs().end());
  for (Complex& c : out) c *= s;
  return SpectralField(a.grid(), std::move(out));
}

}  // namespace chsplit
