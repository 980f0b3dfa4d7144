#pragma once

#include <cstddef>
#include <numbers>

namespace chsplit {

/// Uniform n x n collocation grid on the torus [-pi, pi)^2.
///
/// Storage index i in [0, n) maps to the node x_i = -pi + i * spacing and to the
/// wavenumber k = i for i < n/2, k = i - n otherwise (FFT ordering). Fields are
/// row-major: flat index i1 * n + i2 addresses (x_{i1}, x_{i2}) or (k1, k2).
class Grid2D {
 public:
  explicit Grid2D(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }
  double spacing() const noexcept { return 2.0 * std::numbers::pi / n_; }
  /// Quadrature weight per node, spacing^2.
  double weight() const noexcept { return spacing() * spacing(); }

  double node(int i) const noexcept { return -std::numbers::pi + i * spacing(); }
  int wavenumber(int i) const noexcept { return i < n_ / 2 ? i : i - n_; }
  /// Storage index of wavenumber k (k taken modulo n).
  int slot(int k) const noexcept { return ((k % n_) + n_) % n_; }
  /// Storage index of -k for the mode stored at i.
  int mirror(int i) const noexcept { return (n_ - i) % n_; }

  std::size_t flat(int i1, int i2) const noexcept {
    return static_cast<std::size_t>(i1) * n_ + i2;
  }
  double k_squared(int i1, int i2) const noexcept {
    const double k1 = wavenumber(i1);
    const double k2 = wavenumber(i2);
    return k1 * k1 + k2 * k2;
  }
  /// True when (i1, i2) touches the -n/2 row or column, which has no conjugate partner.
  bool is_nyquist(int i1, int i2) const noexcept { return i1 == n_ / 2 || i2 == n_ / 2; }
  /// Two-thirds rule: keep |k_j| <= n/3 in both directions.
  bool in_two_thirds_band(int i1, int i2) const noexcept;

  bool operator==(const Grid2D&) const = default;

 private:
  int n_;
};

}  // namespace chsplit
