#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chsplit/field.hpp"

namespace chsplit {

/// One term a cos(k.x) + b sin(k.x) of an explicit initial condition.
struct ModeTerm {
  int k1 = 0;
  int k2 = 0;
  double cos_amp = 0.0;
  double sin_amp = 0.0;
};

/// Source of u^0. Every kind produces a real, mean-zero field.
struct InitialDataSpec {
  enum class Kind { modes, random_band_limited, file };

  Kind kind = Kind::modes;
  std::vector<ModeTerm> modes;

  // random_band_limited: independent N(0, amplitude^2) cosine and sine amplitudes on
  // every mode with 0 < |k|_inf <= band, optionally rescaled to an exact H^1 norm.
  std::uint64_t seed = 0;
  int band = 4;
  double amplitude = 0.1;
  std::optional<double> h1_target;

  // file: a CHF1 snapshot whose grid must match.
  std::string path;
};

/// Spectral coefficients of u^0 on the grid. Throws ValidationError for k = 0 terms,
/// modes outside the lattice, or a snapshot on a different grid.
SpectralField realize(const InitialDataSpec& spec, const Grid2D& grid);

/// count random band-limited fields with seeds seed, seed + 1, ...
std::vector<SpectralField> random_corpus(const Grid2D& grid, int count, std::uint64_t seed, int band,
                                         double h1_target);

}  // namespace chsplit
