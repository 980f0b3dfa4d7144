#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "chsplit/grid.hpp"

namespace chsplit {

using Complex = std::complex<double>;

/// Nodal values of a real scalar field. Immutable once constructed.
class RealField {
 public:
  /// Zero field.
  explicit RealField(Grid2D grid);
  /// Throws ValidationError naming the first non-finite index.
  RealField(Grid2D grid, std::vector<double> values);

  /// Samples fn(x1, x2) at every node.
  static RealField sample(Grid2D grid, const std::function<double(double, double)>& fn);

  const Grid2D& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  double operator()(int i1, int i2) const noexcept { return values_[grid_.flat(i1, i2)]; }

 private:
  Grid2D grid_;
  std::vector<double> values_;
};

/// Fourier coefficients f^(k) = \int f(x) e^{-i k.x} dx on the lattice, stored in FFT order.
class SpectralField {
 public:
  explicit SpectralField(Grid2D grid);
  SpectralField(Grid2D grid, std::vector<Complex> coeffs);

  const Grid2D& grid() const noexcept { return grid_; }
  std::span<const Complex> coeffs() const noexcept { return coeffs_; }
  std::span<Complex> coeffs() noexcept { return coeffs_; }

  Complex at(int i1, int i2) const noexcept { return coeffs_[grid_.flat(i1, i2)]; }
  /// Coefficient of wavenumber (k1, k2); wavenumbers are taken modulo n.
  Complex mode(int k1, int k2) const noexcept {
    return coeffs_[grid_.flat(grid_.slot(k1), grid_.slot(k2))];
  }
  void set_mode(int k1, int k2, Complex value) noexcept {
    coeffs_[grid_.flat(grid_.slot(k1), grid_.slot(k2))] = value;
  }

  /// L2 norm through Plancherel, (2 pi)^{-2} sum |f^(k)|^2.
  double l2_norm() const noexcept;
  /// Largest |f^(-k) - conj(f^(k))| over the lattice.
  double hermitian_defect() const noexcept;
  /// coeff(0) vanishes to 1e-12 relative to max(||f||_2, 1).
  bool is_mean_zero() const noexcept;

 private:
  Grid2D grid_;
  std::vector<Complex> coeffs_;
};

RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double s, const RealField& a);

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);

}  // namespace chsplit
