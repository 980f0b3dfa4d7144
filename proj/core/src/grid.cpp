#include "chsplit/grid.hpp"

#include <cstdlib>
#include <string>

#include "chsplit/error.hpp"

namespace chsplit {

Grid2D::Grid2D(int n) : n_(n) {
  if (n < 8 || n % 2 != 0) {
    throw ValidationError("grid size n must be an even integer >= 8, got " + std::to_string(n));
  }
}

bool Grid2D::in_two_thirds_band(int i1, int i2) const noexcept {
  return 3 * std::abs(wavenumber(i1)) <= n_ && 3 * std::abs(wavenumber(i2)) <= n_;
}

}  // namespace chsplit
