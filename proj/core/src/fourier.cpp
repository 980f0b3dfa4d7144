#include "chsplit/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "chsplit/error.hpp"

namespace chsplit {

namespace {

// The FFTW planner is not re-entrant; execution with fftw_execute_dft is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

inline double checkerboard(int i1, int i2) { return ((i1 + i2) & 1) ? -1.0 : 1.0; }

}  // namespace

FourierTransform::FourierTransform(Grid2D grid) : grid_(grid) {
  const int n = grid_.n();
  std::lock_guard lock(planner_mutex());
  buffer_ = reinterpret_cast<Complex*>(fftw_alloc_complex(grid_.size()));
  auto* buf = reinterpret_cast<fftw_complex*>(buffer_);
  // ESTIMATE keeps plan selection deterministic so repeated runs are bit-identical.
  forward_plan_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FourierTransform::~FourierTransform() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  fftw_free(buffer_);
}

void FourierTransform::forward(std::span<const double> values, std::span<Complex> coeffs) {
  const int n = grid_.n();
  for (std::size_t i = 0; i < grid_.size(); ++i) buffer_[i] = Complex(values[i], 0.0);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const double w = grid_.weight();
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const std::size_t idx = grid_.flat(i1, i2);
      coeffs[idx] = (w * checkerboard(i1, i2)) * buffer_[idx];
    }
  }
}

void FourierTransform::inverse(std::span<const Complex> coeffs, std::span<double> values) {
  const int n = grid_.n();
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const std::size_t idx = grid_.flat(i1, i2);
      buffer_[idx] = checkerboard(i1, i2) * coeffs[idx];
    }
  }
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double scale = 1.0 / (4.0 * std::numbers::pi * std::numbers::pi);
  for (std::size_t i = 0; i < grid_.size(); ++i) values[i] = scale * buffer_[i].real();
}

double FourierTransform::inverse_with_residue(std::span<const Complex> coeffs,
                                              std::span<double> values) {
  inverse(coeffs, values);
  double max_imag = 0.0;
  double max_abs = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    max_imag = std::max(max_imag, std::abs(buffer_[i].imag()));
    max_abs = std::max(max_abs, std::abs(buffer_[i]));
  }
  return max_abs > 0.0 ? max_imag / max_abs : 0.0;
}

FourierTransform& transform_for(const Grid2D& grid) {
  thread_local std::map<int, std::unique_ptr<FourierTransform>> cache;
  auto& slot = cache[grid.n()];
  if (!slot) slot = std::make_unique<FourierTransform>(grid);
  return *slot;
}

SpectralField forward(const RealField& f) {
  SpectralField out(f.grid());
  transform_for(f.grid()).forward(f.values(), out.coeffs());
  return out;
}

RealField inverse(const SpectralField& f) {
  const Grid2D& grid = f.grid();
  double scale = 0.0;
  for (const Complex& c : f.coeffs()) scale = std::max(scale, std::abs(c));
  const double defect = f.hermitian_defect();
  if (defect > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "inverse: coefficients are not Hermitian-symmetric (defect " << defect
        << " vs largest coefficient " << scale << ")";
    throw ValidationError(msg.str());
  }
  // Symmetrise so the imaginary residue is pure round-off.
  std::vector<Complex> sym(grid.size());
  for (int i1 = 0; i1 < grid.n(); ++i1) {
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      const Complex c = f.at(i1, i2);
      const Complex m = f.at(grid.mirror(i1), grid.mirror(i2));
      sym[grid.flat(i1, i2)] = 0.5 * (c + std::conj(m));
    }
  }
  std::vector<double> values(grid.size());
  const double residue = transform_for(grid).inverse_with_residue(sym, values);
  if (residue > 1e-12) {
    std::ostringstream msg;
    msg << "inverse: imaginary residue " << residue << " exceeds 1e-12";
    throw ValidationError(msg.str());
  }
  return RealField(grid, std::move(values));
}

}  // namespace chsplit
