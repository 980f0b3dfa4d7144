#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "chsplit/error.hpp"
#include "chsplit/fourier.hpp"
#include "chsplit/multiplier.hpp"
#include "chsplit/norms.hpp"
#include "oracles.hpp"

using namespace chsplit;
using oracle::kPi;
using oracle::kTwoPiSq;

namespace {

double max_abs_diff(const RealField& a, const RealField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

double max_abs(const RealField& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST(Grid, RejectsOddOrTinySizes) {
  EXPECT_THROW(Grid2D(7), ValidationError);
  EXPECT_THROW(Grid2D(6), ValidationError);
  EXPECT_NO_THROW(Grid2D(8));
}

TEST(Grid, WavenumberOrderingAndNodes) {
  const Grid2D g(8);
  EXPECT_EQ(g.wavenumber(0), 0);
  EXPECT_EQ(g.wavenumber(3), 3);
  EXPECT_EQ(g.wavenumber(4), -4);
  EXPECT_EQ(g.wavenumber(7), -1);
  EXPECT_EQ(g.slot(-1), 7);
  EXPECT_EQ(g.mirror(1), 7);
  EXPECT_DOUBLE_EQ(g.node(0), -kPi);
  EXPECT_NEAR(g.node(4), 0.0, 1e-15);
}

TEST(Forward, ZeroFieldHasZeroCoefficients) {
  const SpectralField f = forward(RealField(Grid2D(16)));
  for (const Complex& c : f.coeffs()) EXPECT_EQ(c, Complex(0.0));
}

TEST(Forward, CosineCoefficientsMatchAnalyticIntegral) {
  const Grid2D g(16);
  const RealField f = RealField::sample(g, [](double x1, double) { return std::cos(x1); });
  const SpectralField fh = forward(f);
  for (int k1 = -7; k1 <= 8; ++k1) {
    for (int k2 = -7; k2 <= 8; ++k2) {
      const bool active = k2 == 0 && std::abs(k1) == 1;
      const Complex expected = active ? Complex(kTwoPiSq, 0.0) : Complex(0.0);
      EXPECT_NEAR(std::abs(fh.mode(k1, k2) - expected), 0.0, 1e-12 * kTwoPiSq) << k1 << "," << k2;
    }
  }
}

TEST(Forward, SineCoefficientsMatchAnalyticIntegral) {
  const Grid2D g(16);
  const RealField f = RealField::sample(g, [](double, double x2) { return std::sin(2.0 * x2); });
  const SpectralField fh = forward(f);
  EXPECT_NEAR(std::abs(fh.mode(0, 2) - Complex(0.0, -kTwoPiSq)), 0.0, 1e-12 * kTwoPiSq);
  EXPECT_NEAR(std::abs(fh.mode(0, -2) - Complex(0.0, kTwoPiSq)), 0.0, 1e-12 * kTwoPiSq);
  EXPECT_NEAR(std::abs(fh.mode(2, 0)), 0.0, 1e-12 * kTwoPiSq);
}

TEST(Forward, MatchesDirectSumOnRandomField) {
  const Grid2D g(12);
  const RealField f = oracle::random_trig_poly(11, 4, 1.0, 0.3).sample(g);
  const SpectralField fh = forward(f);
  for (int k1 = -5; k1 <= 6; ++k1) {
    for (int k2 = -5; k2 <= 6; ++k2) {
      const Complex direct = oracle::direct_coefficient(f, k1, k2);
      EXPECT_NEAR(std::abs(fh.mode(k1, k2) - direct), 0.0, 1e-11) << k1 << "," << k2;
    }
  }
}

TEST(Forward, RejectsNonFiniteValuesNamingIndex) {
  const Grid2D g(8);
  std::vector<double> v(g.size(), 0.0);
  v[g.flat(2, 5)] = std::numeric_limits<double>::quiet_NaN();
  try {
    RealField f(g, v);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("(2, 5)"), std::string::npos) << e.what();
  }
}

TEST(Inverse, ZeroCoefficientsGiveZeroField) {
  const RealField f = inverse(SpectralField(Grid2D(16)));
  EXPECT_EQ(max_abs(f), 0.0);
}

TEST(Inverse, CosineFromTwoCoefficients) {
  const Grid2D g(16);
  SpectralField fh(g);
  fh.set_mode(1, 0, kTwoPiSq);
  fh.set_mode(-1, 0, kTwoPiSq);
  const RealField f = inverse(fh);
  const RealField expected = RealField::sample(g, [](double x1, double) { return std::cos(x1); });
  EXPECT_LT(max_abs_diff(f, expected), 1e-14);
}

TEST(Inverse, MatchesDirectSynthesis) {
  const Grid2D g(16);
  std::vector<oracle::Mode> modes = {{2, -1, Complex(3.0, 1.5)}, {-2, 1, Complex(3.0, -1.5)},
                                     {0, 3, Complex(-2.0, 0.5)}, {0, -3, Complex(-2.0, -0.5)}};
  SpectralField fh(g);
  for (const auto& m : modes) fh.set_mode(m.k1, m.k2, m.c);
  const RealField f = inverse(fh);
  for (int i1 = 0; i1 < g.n(); i1 += 3) {
    for (int i2 = 0; i2 < g.n(); i2 += 5) {
      EXPECT_NEAR(f(i1, i2), oracle::direct_synthesis(modes, g.node(i1), g.node(i2)), 1e-14);
    }
  }
}

TEST(Inverse, RejectsNonHermitianCoefficients) {
  const Grid2D g(16);
  SpectralField fh(g);
  fh.set_mode(1, 0, Complex(1.0, 0.0));
  fh.set_mode(-1, 0, Complex(0.5, 0.0));
  EXPECT_THROW(inverse(fh), ValidationError);
}

TEST(Inverse, RoundTripIsIdentity) {
  const Grid2D g(32);
  const RealField f = oracle::random_trig_poly(5, 6, 1.0, 0.7).sample(g);
  const RealField back = inverse(forward(f));
  EXPECT_LT(max_abs_diff(f, back), 1e-13 * max_abs(f));
}

TEST(SpectralField, HermitianAndMeanZeroFlags) {
  const Grid2D g(16);
  const SpectralField fh = forward(oracle::random_trig_poly(2, 3).sample(g));
  EXPECT_LT(fh.hermitian_defect(), 1e-12);
  EXPECT_TRUE(fh.is_mean_zero());
  const SpectralField shifted = forward(oracle::random_trig_poly(2, 3, 1.0, 0.25).sample(g));
  EXPECT_FALSE(shifted.is_mean_zero());
}

TEST(Parseval, NodeInnerProductMatchesSpectralSum) {
  const Grid2D g(32);
  const RealField f = oracle::random_trig_poly(21, 5, 1.0, 0.2).sample(g);
  const RealField h = oracle::random_trig_poly(22, 5, 1.0, -0.4).sample(g);
  double nodal = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) nodal += f.values()[i] * h.values()[i];
  nodal *= g.weight();
  const SpectralField fh = forward(f);
  const SpectralField hh = forward(h);
  Complex spectral = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) spectral += fh.coeffs()[i] * std::conj(hh.coeffs()[i]);
  spectral /= oracle::kArea;
  EXPECT_NEAR(spectral.real(), nodal, 1e-12 * std::abs(nodal));
  EXPECT_NEAR(spectral.imag(), 0.0, 1e-12 * std::abs(nodal));
}

TEST(Multiplier, IdentitySymbolIsIdentity) {
  const Grid2D g(16);
  const SpectralField fh = forward(oracle::random_trig_poly(3, 4, 1.0, 0.5).sample(g));
  const MultiplierSpec one(g, [](int, int) { return 1.0; }, ZeroMode::identity);
  const SpectralField out = apply_multiplier(fh, one);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(out.coeffs()[i], fh.coeffs()[i]);
}

TEST(Multiplier, LaplacianOfCosine) {
  const Grid2D g(16);
  const RealField f = RealField::sample(g, [](double x1, double) { return std::cos(x1); });
  const RealField lap = inverse(apply_multiplier(forward(f), MultiplierSpec::laplacian(g)));
  EXPECT_LT(max_abs_diff(lap, -1.0 * f), 1e-14);
}

TEST(Multiplier, InverseGradientMagnitudeOnCos3) {
  const Grid2D g(16);
  const RealField f = RealField::sample(g, [](double x1, double) { return std::cos(3.0 * x1); });
  const RealField out = inverse(apply_multiplier(forward(f), MultiplierSpec::fractional_laplacian(g, -1.0)));
  EXPECT_LT(max_abs_diff(out, (1.0 / 3.0) * f), 1e-14);
}

TEST(Multiplier, RejectsOddSymbol) {
  const Grid2D g(16);
  EXPECT_THROW(MultiplierSpec(g, [](int k1, int) { return static_cast<double>(k1); }, ZeroMode::identity),
               ValidationError);
}

TEST(Multiplier, RejectsSingularSymbolWithIdentityZeroMode) {
  const Grid2D g(16);
  const auto singular = [](int k1, int k2) { return 1.0 / std::sqrt(double(k1 * k1 + k2 * k2)); };
  EXPECT_THROW(MultiplierSpec(g, singular, ZeroMode::identity), ValidationError);
  EXPECT_NO_THROW(MultiplierSpec(g, singular, ZeroMode::annihilate));
}

TEST(Multiplier, CompositionCommutes) {
  const Grid2D g(32);
  const SpectralField fh = forward(oracle::random_trig_poly(8, 6, 1.0, 0.1).sample(g));
  const MultiplierSpec a = MultiplierSpec::biharmonic_heat(g, 0.01);
  const MultiplierSpec b = MultiplierSpec::fractional_laplacian(g, 1.5);
  const SpectralField ab = apply_multiplier(apply_multiplier(fh, a), b);
  const SpectralField ba = apply_multiplier(apply_multiplier(fh, b), a);
  double scale = 0.0;
  for (const Complex& c : ab.coeffs()) scale = std::max(scale, std::abs(c));
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_LE(std::abs(ab.coeffs()[i] - ba.coeffs()[i]), 1e-13 * scale);
  }
  const SpectralField composed = apply_multiplier(fh, a.compose(b));
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_LE(std::abs(composed.coeffs()[i] - ab.coeffs()[i]), 1e-13 * scale);
  }
}

TEST(Multiplier, IsLinear) {
  const Grid2D g(16);
  const SpectralField x = forward(oracle::random_trig_poly(1, 4).sample(g));
  const SpectralField y = forward(oracle::random_trig_poly(2, 4).sample(g));
  const MultiplierSpec m = MultiplierSpec::fractional_laplacian(g, 2.0);
  const SpectralField lhs = apply_multiplier(2.0 * x + y, m);
  const SpectralField rhs = 2.0 * apply_multiplier(x, m) + apply_multiplier(y, m);
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_LE(std::abs(lhs.coeffs()[i] - rhs.coeffs()[i]), 1e-12 * (1.0 + std::abs(lhs.coeffs()[i])));
  }
}

TEST(Norms, CosineClosedForms) {
  const Grid2D g(32);
  const RealField f = RealField::sample(g, [](double x1, double) { return std::cos(x1); });
  const NormSet n = norms(f);
  EXPECT_NEAR(n.l2 * n.l2, kTwoPiSq, 1e-12 * kTwoPiSq);
  EXPECT_NEAR(std::pow(n.l4, 4), 1.5 * kPi * kPi, 1e-12 * kPi * kPi);
  EXPECT_NEAR(n.linf, 1.0, 1e-15);
  // H^1 weight (1 + |k|^2) = 2 on both active modes.
  EXPECT_NEAR(n.h1 * n.h1, 2.0 * kTwoPiSq, 1e-12 * kTwoPiSq);
  ASSERT_TRUE(n.hdot_neg1.has_value());
  EXPECT_NEAR(*n.hdot_neg1, std::sqrt(kTwoPiSq), 1e-12);
}

TEST(Norms, ZeroFieldAllZero) {
  const NormSet n = norms(RealField(Grid2D(16)), 3.0);
  EXPECT_EQ(n.l2, 0.0);
  EXPECT_EQ(n.l4, 0.0);
  EXPECT_EQ(n.linf, 0.0);
  EXPECT_EQ(n.h1, 0.0);
  EXPECT_EQ(n.hs, 0.0);
  ASSERT_TRUE(n.hdot_neg1.has_value());
  EXPECT_EQ(*n.hdot_neg1, 0.0);
}

TEST(Norms, HomogeneousNormsOfCos2) {
  const Grid2D g(32);
  const SpectralField fh =
      forward(RealField::sample(g, [](double x1, double) { return std::cos(2.0 * x1); }));
  const double l2 = fh.l2_norm();
  EXPECT_NEAR(homogeneous_sobolev_norm(fh, 1.0), 2.0 * l2, 1e-13 * l2);
  EXPECT_NEAR(homogeneous_sobolev_norm(fh, -1.0), 0.5 * l2, 1e-13 * l2);
}

TEST(Norms, NegativeHomogeneousNormRequiresMeanZero) {
  const Grid2D g(16);
  const RealField f = RealField::sample(g, [](double x1, double) { return 1.0 + std::cos(x1); });
  EXPECT_THROW(hdot_neg1_norm(f), ValidationError);
  EXPECT_FALSE(norms(f).hdot_neg1.has_value());
}

TEST(Norms, NegativeNormBelowL2ForMeanZeroFields) {
  const Grid2D g(32);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const RealField f = oracle::random_trig_poly(seed, 6).sample(g);
    EXPECT_LE(hdot_neg1_norm(f), lp_norm(f, 2.0) * (1.0 + 1e-14));
  }
}

TEST(Norms, SobolevNormMatchesDirectWeightedSum) {
  const Grid2D g(16);
  const oracle::TrigPoly p = oracle::random_trig_poly(4, 3);
  // a cos(k.x) + b sin(k.x) puts 2 pi^2 (a -+ i b) on +-k: 2 pi^2 (a^2 + b^2) of squared norm.
  double expected = 0.0;
  for (const auto& t : p.terms) {
    expected += std::pow(1.0 + t.k1 * t.k1 + t.k2 * t.k2, 2.5) * 2.0 * kPi * kPi * (t.a * t.a + t.b * t.b);
  }
  EXPECT_NEAR(sobolev_norm(forward(p.sample(g)), 2.5), std::sqrt(expected), 1e-12 * std::sqrt(expected));
}

TEST(ProjectMeanZero, Examples) {
  const Grid2D g(16);
  const RealField five = RealField::sample(g, [](double, double) { return 5.0; });
  EXPECT_LT(max_abs(project_mean_zero(five)), 1e-14);
  const RealField c = RealField::sample(g, [](double x1, double) { return std::cos(x1); });
  EXPECT_LT(max_abs_diff(project_mean_zero(c), c), 1e-15);
  const RealField shifted = RealField::sample(g, [](double x1, double) { return 1.0 + std::cos(x1); });
  EXPECT_LT(max_abs_diff(project_mean_zero(shifted), c), 1e-14);
}
