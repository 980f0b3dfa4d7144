#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "chsplit/error.hpp"
#include "chsplit/fourier.hpp"
#include "chsplit/harness.hpp"
#include "chsplit/norms.hpp"
#include "oracles.hpp"

using namespace chsplit;

namespace {

SolverParams params(int n, double tau, double nu = 1.0, SplitOrder order = SplitOrder::LN) {
  SolverParams p;
  p.n = n;
  p.tau = tau;
  p.nu = nu;
  p.order = order;
  return p;
}

InitialDataSpec two_mode(double a = 0.5) {
  InitialDataSpec s;
  s.kind = InitialDataSpec::Kind::modes;
  s.modes = {{1, 0, a, 0.0}, {1, 1, 0.3, 0.0}};
  return s;
}

InitialDataSpec cos_spec(double a) {
  InitialDataSpec s;
  s.modes = {{1, 0, a, 0.0}};
  return s;
}

std::vector<double> convergence_taus(double horizon) {
  std::vector<double> taus;
  for (int e = 6; e <= 11; ++e) taus.push_back(horizon * std::ldexp(1.0, -e));
  return taus;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Run, ZeroFieldStaysAtPotentialMinimumEnergy) {
  const SolverParams p = params(16, 0.01);
  RunOptions o;
  o.steps = 5;
  const RunDiagnostics d = run(SpectralField(p.grid()), p, o);
  ASSERT_EQ(d.records.size(), 5u);
  EXPECT_FALSE(d.unstable);
  for (const StepRecord& r : d.records) {
    EXPECT_EQ(r.mass, 0.0);
    EXPECT_EQ(r.linf, 0.0);
    EXPECT_EQ(r.h1, 0.0);
    EXPECT_EQ(r.e1_quadratic, 0.0);
    EXPECT_NEAR(r.e1, oracle::kPi * oracle::kPi, 1e-13);
    EXPECT_TRUE(r.cert_ok);
  }
}

TEST(Run, TwoModeDataDissipatesModifiedEnergy) {
  const SolverParams p = params(64, 1e-3);
  RunOptions o;
  o.steps = 10000;
  o.k0 = 2;
  const RunDiagnostics d = run(two_mode(), p, o);
  ASSERT_FALSE(d.unstable);
  ASSERT_EQ(d.records.size(), 10000u);
  double mass_drift = 0.0;
  for (std::size_t i = 0; i < d.records.size(); ++i) {
    const StepRecord& r = d.records[i];
    EXPECT_TRUE(r.cert_ok) << "step " << r.step;
    EXPECT_EQ(r.time, r.step * p.tau);
    mass_drift = std::max(mass_drift, std::abs(r.mass - d.initial.mass));
    if (i > 0) {
      const double prev = d.records[i - 1].e1;
      ASSERT_LE(r.e1, prev + 1e-10 * (1.0 + prev)) << "step " << r.step;
    }
  }
  EXPECT_LE(mass_drift, 1e-12);

  double first_h1 = 0.0, second_h1 = 0.0, first_hk = 0.0, second_hk = 0.0;
  for (const StepRecord& r : d.records) {
    const bool first = r.step <= 5000;
    (first ? first_h1 : second_h1) = std::max(first ? first_h1 : second_h1, r.h1);
    (first ? first_hk : second_hk) = std::max(first ? first_hk : second_hk, r.hk0);
  }
  EXPECT_LE(second_h1, first_h1 + 1e-12);
  EXPECT_LE(second_hk, first_hk + 1e-12);
}

TEST(Run, HugeStepTripsBlowUpGuard) {
  const SolverParams p = params(64, 10.0, 0.1);
  RunOptions o;
  o.steps = 100;
  const RunDiagnostics d = run(two_mode(), p, o);
  int violations = 0;
  for (const StepRecord& r : d.records) violations += r.cert_ok ? 0 : 1;
  EXPECT_TRUE(d.unstable || violations > 0);
  EXPECT_TRUE(d.unstable);
  EXPECT_EQ(d.unstable_step, d.records.back().step);
  EXPECT_LT(d.records.size(), 100u);
}

TEST(Run, Deterministic) {
  InitialDataSpec s;
  s.kind = InitialDataSpec::Kind::random_band_limited;
  s.seed = 42;
  s.h1_target = 2.0;
  const SolverParams p = params(32, 1e-3, 1.0, SplitOrder::NL);
  RunOptions o;
  o.steps = 50;
  const RunDiagnostics a = run(s, p, o);
  const RunDiagnostics b = run(s, p, o);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const StepRecord& x = a.records[i];
    const StepRecord& y = b.records[i];
    for (auto [u, v] : {std::pair{x.e1, y.e1}, {x.energy, y.energy}, {x.linf, y.linf}, {x.h1, y.h1},
                        {x.cert_lhs, y.cert_lhs}, {x.increment_l2, y.increment_l2}}) {
      EXPECT_TRUE(same_bits(u, v));
    }
  }
}

TEST(Run, SnapshotCallbackCadence) {
  const SolverParams p = params(16, 1e-3);
  RunOptions o;
  o.steps = 10;
  o.snapshot_every = 4;
  std::vector<int> seen;
  o.on_snapshot = [&](int step, const RealField& u) {
    EXPECT_EQ(u.grid().n(), 16);
    seen.push_back(step);
  };
  run(cos_spec(0.2), p, o);
  EXPECT_EQ(seen, (std::vector<int>{0, 4, 8}));
}

TEST(Run, RejectsBadArguments) {
  const SolverParams p = params(16, 1e-3);
  RunOptions o;
  o.steps = 0;
  EXPECT_THROW(run(cos_spec(0.1), p, o), ValidationError);
  SolverParams bad = p;
  bad.tau = -1.0;
  o.steps = 1;
  EXPECT_THROW(run(cos_spec(0.1), bad, o), ValidationError);
}

TEST(Convergence, FirstOrderForTwoCosineData) {
  InitialDataSpec s;
  s.modes = {{1, 0, 0.5, 0.0}, {0, 2, 0.25, 0.0}};
  const std::vector<double> taus = convergence_taus(0.5);
  const ConvergenceStudy c = convergence_study(s, params(32, 1e-3), 0.5, taus);
  EXPECT_GE(c.fitted_order, 0.85);
  EXPECT_LE(c.fitted_order, 1.15);
  for (std::size_t i = 1; i < c.errors.size(); ++i) EXPECT_LT(c.errors[i], c.errors[i - 1]);
  EXPECT_DOUBLE_EQ(c.tau_ref, taus.back() / 32.0);
  EXPECT_FALSE(c.reference_spec.empty());
}

TEST(Convergence, LongerHorizonDoesNotShrinkErrors) {
  InitialDataSpec s;
  s.modes = {{1, 0, 0.5, 0.0}, {0, 2, 0.25, 0.0}};
  const std::vector<double> taus = convergence_taus(0.5);
  const ConvergenceStudy short_run = convergence_study(s, params(32, 1e-3), 0.5, taus);
  const ConvergenceStudy long_run = convergence_study(s, params(32, 1e-3), 1.0, taus);
  for (std::size_t i = 0; i < taus.size(); ++i) EXPECT_GE(long_run.errors[i], short_run.errors[i]);
}

TEST(Convergence, CrossReferenceWithOtherOrder) {
  InitialDataSpec s;
  s.modes = {{1, 0, 0.5, 0.0}, {0, 2, 0.25, 0.0}};
  ConvergenceOptions opts;
  opts.reference_order = SplitOrder::NL;
  const ConvergenceStudy c = convergence_study(s, params(32, 1e-3), 0.5, convergence_taus(0.5), opts);
  EXPECT_GE(c.fitted_order, 0.85);
  EXPECT_LE(c.fitted_order, 1.15);
}

TEST(Convergence, RejectsInvalidStudies) {
  const SolverParams p = params(16, 1e-3);
  const InitialDataSpec s = cos_spec(0.5);
  const std::vector<double> non_dividing = {0.1, 0.07, 0.05, 0.025};
  EXPECT_THROW(convergence_study(s, p, 0.5, non_dividing), ValidationError);
  const std::vector<double> too_few = {0.1, 0.05, 0.025};
  EXPECT_THROW(convergence_study(s, p, 0.5, too_few), ValidationError);
  ConvergenceOptions opts;
  opts.ref_divisor = 16.0;
  const std::vector<double> ok = {0.1, 0.05, 0.025, 0.0125};
  EXPECT_THROW(convergence_study(s, p, 0.5, ok, opts), ValidationError);
}

TEST(DefectRate, SecondOrderForCosine) {
  std::vector<double> taus;
  for (int e = 20; e <= 24; ++e) taus.push_back(std::ldexp(1.0, -e));
  const DefectRateStudy d = defect_rate_study(cos_spec(1.0), params(32, 1e-3), taus);
  EXPECT_GE(d.slope, 1.9);
  EXPECT_LE(d.slope, 2.1);
  for (const DefectReport& r : d.reports) EXPECT_GE(r.defect_l2, 0.0);
}

TEST(DefectRate, ZeroFieldHasZeroDefect) {
  std::vector<double> taus = {1e-3, 5e-4, 2.5e-4, 1.25e-4, 6.25e-5};
  const DefectRateStudy d = defect_rate_study(SpectralField(Grid2D(16)), params(16, 1e-3), taus);
  for (const DefectReport& r : d.reports) EXPECT_EQ(r.defect_l2, 0.0);
  EXPECT_TRUE(std::isnan(d.slope));
}

TEST(DefectRate, NeedsFiveTaus) {
  std::vector<double> taus = {1e-3, 5e-4, 2.5e-4, 1.25e-4};
  EXPECT_THROW(defect_rate_study(cos_spec(1.0), params(16, 1e-3), taus), ValidationError);
}

TEST(TauStar, ZeroDataReportsBracketTop) {
  BisectionOptions o;
  o.probe_steps = 20;
  const TauStarResult r = empirical_tau_star(SpectralField(Grid2D(16)), params(16, 1e-3), o);
  EXPECT_TRUE(r.at_bracket_top);
  EXPECT_EQ(r.tau_star, o.tau_hi);
}

TEST(TauStar, SmallerMobilityLowersThreshold) {
  BisectionOptions o;
  o.tau_hi = 10.0;
  const TauStarResult nu1 = tau_star_bisection(two_mode(2.0), params(32, 1e-3, 1.0), o);
  const TauStarResult nu_quarter = tau_star_bisection(two_mode(2.0), params(32, 1e-3, 0.25), o);
  EXPECT_FALSE(nu_quarter.at_bracket_top);
  EXPECT_LT(nu_quarter.tau_star, nu1.tau_star);
}

TEST(TauStar, LargerDataDoesNotRaiseThreshold) {
  BisectionOptions o;
  o.tau_hi = 10.0;
  double previous = 1e300;
  for (double a : {1.0, 2.0, 3.0}) {
    const TauStarResult r = tau_star_bisection(two_mode(a), params(32, 1e-3, 0.1), o);
    // Bisection resolves tau* only to rel_tol.
    EXPECT_LE(r.tau_star, previous * (1.0 + 2.0 * o.rel_tol)) << "amplitude " << a;
    previous = r.tau_star;
  }
}

TEST(TauStar, RejectsBracketFailingAtBottom) {
  BisectionOptions o;
  o.tau_lo = 5.0;
  o.tau_hi = 10.0;
  EXPECT_THROW(tau_star_bisection(two_mode(3.0), params(32, 1e-3, 0.05), o), ValidationError);
}

TEST(ParallelFor, VisitsEveryIndexOnceAndPropagatesErrors) {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
}
