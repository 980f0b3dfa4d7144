#include "chsplit/multiplier.hpp"

#include <cmath>
#include <sstream>

#include "chsplit/error.hpp"

namespace chsplit {

MultiplierSpec::MultiplierSpec(Grid2D grid, std::vector<double> table, ZeroMode zero_mode)
    : grid_(grid), table_(std::move(table)), zero_mode_(zero_mode) {}

MultiplierSpec::MultiplierSpec(Grid2D grid, const Symbol& symbol, ZeroMode zero_mode)
    : grid_(grid), table_(grid.size()), zero_mode_(zero_mode) {
  const int n = grid.n();
  for (int i1 = 0; i1 < n; ++i1) {
    for (int i2 = 0; i2 < n; ++i2) {
      const int k1 = grid.wavenumber(i1);
      const int k2 = grid.wavenumber(i2);
      if (k1 == 0 && k2 == 0) {
        if (zero_mode == ZeroMode::annihilate) {
          table_[0] = 0.0;
          continue;
        }
        const double m0 = symbol(0, 0);
        if (!std::isfinite(m0)) {
          throw ValidationError("multiplier symbol is singular at k=0; use ZeroMode::annihilate");
        }
        table_[0] = m0;
        continue;
      }
      const double m = symbol(k1, k2);
      const double mirrored = symbol(-k1, -k2);
      if (!std::isfinite(m)) {
        std::ostringstream msg;
        msg << "multiplier symbol not finite at k=(" << k1 << "," << k2 << ")";
        throw ValidationError(msg.str());
      }
      if (m != mirrored) {
        std::ostringstream msg;
        msg << "multiplier symbol is not even: m(" << k1 << "," << k2 << ")=" << m
            << " but m(" << -k1 << "," << -k2 << ")=" << mirrored;
        throw ValidationError(msg.str());
      }
      table_[grid.flat(i1, i2)] = m;
    }
  }
}

MultiplierSpec MultiplierSpec::radial(Grid2D grid, const std::function<double(double)>& of_k_squared,
                                      ZeroMode zero_mode) {
  return MultiplierSpec(
      grid, [&](int k1, int k2) { return of_k_squared(double(k1) * k1 + double(k2) * k2); },
      zero_mode);
}

MultiplierSpec MultiplierSpec::fractional_laplacian(Grid2D grid, double s) {
  const ZeroMode rule = s < 0.0 ? ZeroMode::annihilate : ZeroMode::identity;
  if (s == 0.0) return radial(grid, [](double) { return 1.0; }, rule);
  return radial(
      grid, [s](double k2) { return k2 == 0.0 ? 0.0 : std::pow(k2, 0.5 * s); }, rule);
}

MultiplierSpec MultiplierSpec::laplacian(Grid2D grid) {
  return radial(grid, [](double k2) { return -k2; }, ZeroMode::identity);
}

MultiplierSpec MultiplierSpec::biharmonic_heat(Grid2D grid, double beta) {
  return radial(grid, [beta](double k2) { return std::exp(-beta * k2 * k2); }, ZeroMode::identity);
}

MultiplierSpec MultiplierSpec::compose(const MultiplierSpec& other) const {
  if (!(grid_ == other.grid_)) throw ValidationError("cannot compose multipliers on different grids");
  std::vector<double> table(table_.size());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = table_[i] * other.table_[i];
  const ZeroMode rule = (zero_mode_ == ZeroMode::annihilate || other.zero_mode_ == ZeroMode::annihilate)
                            ? ZeroMode::annihilate
                            : ZeroMode::identity;
  return MultiplierSpec(grid_, std::move(table), rule);
}

SpectralField apply_multiplier(const SpectralField& f, const MultiplierSpec& m) {
  if (!(f.grid() == m.grid())) throw ValidationError("multiplier and field grids differ");
  SpectralField out(f.grid());
  auto dst = out.coeffs();
  const auto src = f.coeffs();
  const auto table = m.table();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = table[i] * src[i];
  return out;
}

}  // namespace chsplit
