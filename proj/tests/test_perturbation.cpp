#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "dwsplit/perturbation.hpp"
#include "oracles.hpp"

using namespace dwsplit;

namespace {

AnharmonicExpansion natural(double eta, ExpansionMode mode) {
  return AnharmonicExpansion::of(from_eta(eta), mode);
}

}  // namespace

TEST(EpsilonClosedForm, Values) {
  EXPECT_NEAR(epsilon_closed_form(0.1), 0.01444375, 1e-15);
  EXPECT_NEAR(epsilon_closed_form(std::sqrt(25.0 / 189.0)), 0.0, 1e-15);
  EXPECT_NEAR(epsilon_closed_form(1e-6), 0.0, 1e-11);
  EXPECT_THROW(epsilon_closed_form(0.0), DomainError);
  EXPECT_THROW(epsilon_closed_form(-1.0), DomainError);
}

TEST(Expansion, Coefficients) {
  const WellParameters p(2.0, 3.0, 4.0, 1.0);
  const auto paper = AnharmonicExpansion::of(p, ExpansionMode::paper);
  const auto taylor = AnharmonicExpansion::of(p, ExpansionMode::taylor);
  EXPECT_DOUBLE_EQ(paper.harmonic, 9.0);
  EXPECT_DOUBLE_EQ(paper.cubic, 9.0 / 4.0);
  EXPECT_DOUBLE_EQ(paper.quartic, 9.0 * 3.0 / 16.0);
  EXPECT_DOUBLE_EQ(taylor.quartic, 9.0 / 64.0);
  EXPECT_DOUBLE_EQ(paper.expansion_point, 4.0);
  EXPECT_DOUBLE_EQ(paper.omega(), 3.0);

  // Taylor mode reproduces V about x = a exactly.
  for (double y : {-0.7, 0.1, 1.3}) {
    const double v = potential(p, 4.0 + y);
    const double series = taylor.harmonic * y * y + taylor.cubic * y * y * y + taylor.quartic * y * y * y * y;
    EXPECT_NEAR(v, series, 1e-12 * (1.0 + v));
  }
}

TEST(RsEngine, MatchesClosedForm) {
  EXPECT_NEAR(rs_engine(natural(0.1, ExpansionMode::paper), 2).epsilon, 0.01444375, 1e-12);
  for (int i = 0; i < 50; ++i) {
    const double eta = 0.01 + 0.19 * i / 49.0;
    EXPECT_NEAR(rs_engine(natural(eta, ExpansionMode::paper), 2).epsilon, epsilon_closed_form(eta), 1e-12)
        << "eta=" << eta;
  }
}

TEST(RsEngine, MatchesTabulatedElements) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    AnharmonicExpansion e;
    e.cubic = d(rng);
    e.quartic = d(rng);
    EXPECT_NEAR(rs_engine(e, 2).epsilon, oracle::rs_epsilon(e.cubic, e.quartic), 1e-12);
  }
}

TEST(RsEngine, QuarticFirstOrder) {
  for (double eta : {0.05, 0.1, 0.2}) {
    auto e = natural(eta, ExpansionMode::paper);
    e.cubic = 0.0;
    EXPECT_NEAR(rs_engine(e, 1).epsilon, 36.0 / 16.0 * eta * eta, 1e-14);
  }
}

TEST(RsEngine, CubicSecondOrder) {
  for (double eta : {0.05, 0.1, 0.2}) {
    auto e = natural(eta, ExpansionMode::paper);
    e.quartic = 0.0;
    const RsResult r = rs_engine(e, 2);
    EXPECT_NEAR(r.epsilon, -11.0 / 16.0 * eta * eta, 1e-14);
    // 9/1 + 6/3 over k = 1, 3
    ASSERT_EQ(r.states.size(), 4u);
    EXPECT_NEAR(r.states[0].energy / r.second_order, 9.0 / 11.0, 1e-13);
    EXPECT_NEAR(r.states[2].energy / r.second_order, 2.0 / 11.0, 1e-13);
  }
}

TEST(RsEngine, TruncationIndependent) {
  for (double eta : {0.03, 0.12}) {
    const auto e = natural(eta, ExpansionMode::paper);
    const double base = rs_engine(e, 2, 5).epsilon;
    EXPECT_NEAR(rs_engine(e, 2, 8).epsilon, base, 1e-14);
    EXPECT_NEAR(rs_engine(e, 2, 16).epsilon, base, 1e-14);
  }
  EXPECT_THROW(rs_engine(AnharmonicExpansion{}, 2, 4), DomainError);
  EXPECT_THROW(rs_engine(AnharmonicExpansion{}, 3, 5), DomainError);
}

TEST(RsEngine, ParityAndSign) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-5.0, 5.0);
  std::uniform_real_distribution<double> pos(0.1, 4.0);
  for (int i = 0; i < 200; ++i) {
    AnharmonicExpansion e;
    e.mass = pos(rng);
    e.hbar = pos(rng);
    e.harmonic = pos(rng);
    e.cubic = d(rng);
    e.quartic = d(rng);
    const RsResult r = rs_engine(e, 2, 9);
    EXPECT_LE(r.second_order, 0.0);
    for (const auto& s : r.states) {
      EXPECT_EQ(s.cross_energy, 0.0) << "k=" << s.k;
      if (s.k % 2 == 1) {
        EXPECT_EQ(s.quartic_element, 0.0);
      } else {
        EXPECT_EQ(s.cubic_element, 0.0);
      }
      if (s.k > 4) {
        EXPECT_EQ(s.energy, 0.0);
      }
    }
  }
}

TEST(SeriesCoefficients, PaperMode) {
  const auto [c1, c2] = epsilon_series_coefficients(ExpansionMode::paper);
  EXPECT_NEAR(c1, 25.0 / 16.0, 1e-12);
  EXPECT_NEAR(c2, -189.0 / 16.0, 1e-12);
}

TEST(SeriesCoefficients, TaylorMode) {
  const auto [c1, c2] = epsilon_series_coefficients(ExpansionMode::taylor);
  EXPECT_NEAR(c1, -0.5, 1e-12);
  EXPECT_NEAR(c2, -21.0 / 256.0, 1e-12);
}

TEST(SeriesCoefficients, NoPerturbation) {
  const auto [c1, c2] = epsilon_series_coefficients([](double) { return AnharmonicExpansion{}; });
  EXPECT_EQ(c1, 0.0);
  EXPECT_EQ(c2, 0.0);
}

TEST(PerturbedLevel, Values) {
  const auto lv = perturbed_level(from_eta(0.1));
  EXPECT_NEAR(lv.energy, 0.5 * 1.01444375, 1e-15);
  EXPECT_EQ(lv.energy, lv.unperturbed * (1.0 + lv.epsilon));
  EXPECT_TRUE(lv.below_barrier);

  const WellParameters p(2.0, 3.0, 1e4, 0.5);
  for (auto mode : {ExpansionMode::paper, ExpansionMode::taylor})
    EXPECT_NEAR(perturbed_level(p, mode).energy, 0.5 * p.energy_unit(), 1e-8);
}

TEST(PerturbedLevel, BelowBarrierFlag) {
  for (int i = 1; i <= 150; ++i) {
    const double eta = i * 1e-3;
    EXPECT_TRUE(perturbed_level(from_eta(eta)).below_barrier) << eta;
    EXPECT_TRUE(perturbed_level(from_eta(eta), ExpansionMode::taylor).below_barrier) << eta;
  }
  // eps turns negative past sqrt(25/189), which keeps eta = 0.49 below the barrier.
  const auto lv = perturbed_level(from_eta(0.49));
  EXPECT_TRUE(lv.below_barrier);
  EXPECT_LT(0.49 * 0.49 * (1.0 + lv.epsilon), 0.25);
  // Flag agrees with the direct energy comparison.
  for (double eta : {0.3, 0.45, 0.55, 0.6, 0.62}) {
    const WellParameters p = from_eta(eta);
    const auto l = perturbed_level(p);
    EXPECT_EQ(l.below_barrier, l.energy < p.barrier_height() && 1.0 + l.epsilon > 0.0) << eta;
  }
  EXPECT_FALSE(perturbed_level(from_eta(0.7), ExpansionMode::taylor).below_barrier);
}

TEST(ValidityBoundary, Cases) {
  EXPECT_NEAR(validity_boundary([](double) { return 0.0; }), 0.5, 1e-12);

  // With the closed-form eps the turning-point condition is never reached;
  // the window closes where 1 + eps hits zero, eta^2 = (25 + sqrt(12721)) / 378.
  const double paper = validity_boundary(ExpansionMode::paper);
  EXPECT_NEAR(paper, std::sqrt((25.0 + std::sqrt(12721.0)) / 378.0), 1e-11);
  for (int i = 1; i <= 150; ++i) {
    const double eta = i * 1e-3;
    EXPECT_LT(2.0 * eta * std::sqrt(1.0 + epsilon_closed_form(eta)), 1.0);
  }

  const double taylor = validity_boundary(ExpansionMode::taylor);
  const double q = 1.0 + epsilon_for(taylor, ExpansionMode::taylor);
  EXPECT_NEAR(2.0 * taylor * std::sqrt(q), 1.0, 1e-10);
  EXPECT_GT(taylor, 0.5);
}
