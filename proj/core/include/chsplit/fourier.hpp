#pragma once

#include <span>

#include "chsplit/field.hpp"

namespace chsplit {

/// FFTW-backed transform pair for one grid size, normalised so that
///   forward:  f^(k) = spacing^2 * sum_j f(x_j) e^{-i k.x_j}
///   inverse:  f(x_j) = (2 pi)^{-2} * sum_k f^(k) e^{i k.x_j}
/// Owns its work buffer, so one instance must not be used from two threads at once.
class FourierTransform {
 public:
  explicit FourierTransform(Grid2D grid);
  ~FourierTransform();
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  const Grid2D& grid() const noexcept { return grid_; }

  void forward(std::span<const double> values, std::span<Complex> coeffs);
  /// Imaginary parts of the result are dropped without inspection.
  void inverse(std::span<const Complex> coeffs, std::span<double> values);
  /// Same as inverse() but returns max |Im| / max |value| of the raw transform.
  double inverse_with_residue(std::span<const Complex> coeffs, std::span<double> values);

 private:
  Grid2D grid_;
  Complex* buffer_;
  void* forward_plan_;
  void* inverse_plan_;
};

/// Per-thread cached transform for the grid.
FourierTransform& transform_for(const Grid2D& grid);

SpectralField forward(const RealField& f);
/// Rejects Hermitian-symmetry violations above 1e-10 (relative to the largest coefficient).
RealField inverse(const SpectralField& f);

}  // namespace chsplit
