#pragma once

#include <functional>
#include <vector>

#include "chsplit/field.hpp"

namespace chsplit {

/// How a multiplier treats the k = 0 mode.
enum class ZeroMode { identity, annihilate };

/// A real Fourier multiplier m(k) tabulated on a grid's lattice.
///
/// The symbol must be even, m(-k) = m(k), so that it maps real fields to real
/// fields; this is checked on construction. With ZeroMode::identity the symbol
/// must also be finite at k = 0.
class MultiplierSpec {
 public:
  using Symbol = std::function<double(int k1, int k2)>;

  MultiplierSpec(Grid2D grid, const Symbol& symbol, ZeroMode zero_mode);

  /// Radial symbol m(|k|^2). Evenness holds by construction.
  static MultiplierSpec radial(Grid2D grid, const std::function<double(double)>& of_k_squared,
                               ZeroMode zero_mode);
  /// Identity on k = 0, |k|^s elsewhere (annihilates k = 0 when s < 0).
  static MultiplierSpec fractional_laplacian(Grid2D grid, double s);
  /// Symbol -|k|^2.
  static MultiplierSpec laplacian(Grid2D grid);
  /// Symbol exp(-beta |k|^4), the biharmonic heat semigroup at time beta.
  static MultiplierSpec biharmonic_heat(Grid2D grid, double beta);

  const Grid2D& grid() const noexcept { return grid_; }
  ZeroMode zero_mode() const noexcept { return zero_mode_; }
  double at(int i1, int i2) const noexcept { return table_[grid_.flat(i1, i2)]; }
  std::span<const double> table() const noexcept { return table_; }

  /// Pointwise product, i.e. composition of the two operators.
  MultiplierSpec compose(const MultiplierSpec& other) const;

 private:
  MultiplierSpec(Grid2D grid, std::vector<double> table, ZeroMode zero_mode);

  Grid2D grid_;
  std::vector<double> table_;
  ZeroMode zero_mode_;
};

/// coeff_out(k) = m(k) coeff_in(k); the zero mode follows m.zero_mode().
SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m);

}  // namespace chsplit
