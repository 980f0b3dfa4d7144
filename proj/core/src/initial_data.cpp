#include "chsplit/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "chsplit/energy.hpp"
#include "chsplit/error.hpp"
#include "chsplit/fourier.hpp"
#include "chsplit/norms.hpp"
#include "chsplit/snapshot.hpp"

namespace chsplit {

namespace {

constexpr double kHalfArea = 2.0 * std::numbers::pi * std::numbers::pi;  // (2 pi)^2 / 2

void add_term(SpectralField& f, const ModeTerm& t) {
  const int n = f.grid().n();
  if (t.k1 == 0 && t.k2 == 0) throw ValidationError("initial mode k=(0,0) would break mean-zero");
  if (std::abs(t.k1) >= n / 2 || std::abs(t.k2) >= n / 2) {
    std::ostringstream msg;
    msg << "initial mode k=(" << t.k1 << "," << t.k2 << ") is not resolved on n=" << n;
    throw ValidationError(msg.str());
  }
  const Complex c = kHalfArea * Complex(t.cos_amp, -t.sin_amp);
  f.set_mode(t.k1, t.k2, f.mode(t.k1, t.k2) + c);
  f.set_mode(-t.k1, -t.k2, f.mode(-t.k1, -t.k2) + std::conj(c));
}

SpectralField random_field(const Grid2D& grid, std::uint64_t seed, int band, double amplitude,
                           const std::optional<double>& h1_target) {
  if (band < 1 || band >= grid.n() / 2) {
    throw ValidationError("random initial data band must satisfy 1 <= band < n/2");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SpectralField f(grid);
  for (int k1 = 0; k1 <= band; ++k1) {
    for (int k2 = -band; k2 <= band; ++k2) {
      if (k1 == 0 && k2 <= 0) continue;  // one representative per +-k pair
      ModeTerm t{k1, k2, amplitude * normal(rng), amplitude * normal(rng)};
      add_term(f, t);
    }
  }
  if (h1_target) {
    const double h1 = sobolev_norm(f, 1.0);
    if (h1 > 0.0) f = (*h1_target / h1) * f;
  }
  return f;
}

}  // namespace

SpectralField realize(const InitialDataSpec& spec, const Grid2D& grid) {
  switch (spec.kind) {
    case InitialDataSpec::Kind::modes: {
      SpectralField f(grid);
      for (const ModeTerm& t : spec.modes) add_term(f, t);
      return f;
    }
    case InitialDataSpec::Kind::random_band_limited:
      return random_field(grid, spec.seed, spec.band, spec.amplitude, spec.h1_target);
    case InitialDataSpec::Kind::file: {
      const Snapshot snap = read_snapshot(spec.path);
      if (snap.field.grid().n() != grid.n()) {
        throw ValidationError("snapshot " + spec.path + " has n=" +
                              std::to_string(snap.field.grid().n()) + ", expected n=" +
                              std::to_string(grid.n()));
      }
      SpectralField f = drop_roundoff(forward(snap.field));
      f.coeffs()[0] = Complex{};
      return f;
    }
  }
  throw ValidationError("unknown initial data kind");
}

std::vector<SpectralField> random_corpus(const Grid2D& grid, int count, std::uint64_t seed, int band,
                                         double h1_target) {
  std::vector<SpectralField> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    out.push_back(random_field(grid, seed + static_cast<std::uint64_t>(i), band, 1.0, h1_target));
  }
  return out;
}

}  // namespace chsplit
