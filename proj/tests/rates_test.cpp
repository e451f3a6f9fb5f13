#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dqo/rates.hpp"
#include "test_util.hpp"

namespace dqo {
namespace {

using std::numbers::pi;
using test::near_rel;
using test::throws_code;

PhysicalConfig config(double m, double omega, double e, double beta) {
  PhysicalConfig c;
  c.m = m;
  c.omega = omega;
  c.e = e;
  c.beta = beta;
  c.cutoff = 100.0 * omega;
  return c;
}

// The published per-case formulas, written out independently of the
// factored implementation.
struct Published {
  PhysicalConfig c;
  double reservoir() const { return c.beta / c.m; }
  double field() const { return c.omega * c.omega * c.e * c.e / (6 * pi * c.m); }
  double boltzmann(double T) const { return std::exp(c.omega / T); }
  double stim(double T) const { return boltzmann(T) / (boltzmann(T) - 1); }
  double nbar(double T) const { return 1 / (boltzmann(T) - 1); }
  double reservoir_fock_weight(int n) const {
    return c.beta * (n + 1) / (4 * pi * c.m * c.omega * c.omega);
  }
  double photon_weight(int n, const FieldQuantum& p) const {
    return (n + 1) * c.e * c.e * c.omega / (16 * pi * pi * c.m) * p.epsilon_x_squared() / p.omega_p;
  }
};

const FieldQuantum kPhotonPerp{{0, 0, 1}, 1.0, 1};
const FieldQuantum kPhotonSlant{{0.6, 0.0, 0.8}, 1.3, 1};
const ReservoirQuantum kQuantumA{1.0};
const ReservoirQuantum kQuantumB{2.5};

FieldOccupation photons() { return Fock<FieldQuantum>{{kPhotonPerp, kPhotonSlant}}; }
ReservoirOccupation reservoir_quanta() { return Fock<ReservoirQuantum>{{kQuantumA, kQuantumB}}; }

void expect_rate(const SpectralRate& r, double smooth, const std::vector<Resonance>& res) {
  EXPECT_TRUE(near_rel(r.smooth, smooth, 1e-13, 1e-300));
  ASSERT_EQ(r.resonances.size(), res.size());
  for (std::size_t i = 0; i < res.size(); ++i) {
    EXPECT_EQ(r.resonances[i].location, res[i].location);
    EXPECT_TRUE(near_rel(r.resonances[i].weight, res[i].weight, 1e-13));
  }
}

class NineCases : public ::testing::TestWithParam<int> {
 protected:
  const PhysicalConfig c = config(1.3, 0.9, 0.4, 0.02);
  const Published pub{c};
  const double T = 0.7;
  const int n = GetParam();
};

TEST_P(NineCases, Case1VacuumVacuum) {
  expect_rate(transition_rate(n, TransitionDirection::down, Vacuum{}, Vacuum{}, c),
              n * pub.reservoir() + n * pub.field(), {});
  EXPECT_TRUE(transition_rate(n, TransitionDirection::up, Vacuum{}, Vacuum{}, c).is_zero());
}

TEST_P(NineCases, Case2ReservoirFock) {
  expect_rate(transition_rate(n, TransitionDirection::down, Vacuum{}, reservoir_quanta(), c),
              n * pub.reservoir() + n * pub.field(), {});
  const double w = pub.reservoir_fock_weight(n);
  expect_rate(transition_rate(n, TransitionDirection::up, Vacuum{}, reservoir_quanta(), c), 0.0,
              {{kQuantumA.omega_p, w}, {kQuantumB.omega_p, w}});
}

TEST_P(NineCases, Case3ReservoirThermal) {
  expect_rate(transition_rate(n, TransitionDirection::down, Vacuum{}, Thermal{T}, c),
              n * pub.reservoir() * pub.stim(T) + n * pub.field(), {});
  expect_rate(transition_rate(n, TransitionDirection::up, Vacuum{}, Thermal{T}, c),
              (n + 1) * pub.reservoir() * pub.nbar(T), {});
}

TEST_P(NineCases, Case4FieldFock) {
  expect_rate(transition_rate(n, TransitionDirection::down, photons(), Vacuum{}, c),
              n * pub.reservoir() + n * pub.field(), {});
  expect_rate(transition_rate(n, TransitionDirection::up, photons(), Vacuum{}, c), 0.0,
              {{kPhotonPerp.omega_p, pub.photon_weight(n, kPhotonPerp)},
               {kPhotonSlant.omega_p, pub.photon_weight(n, kPhotonSlant)}});
}

TEST_P(NineCases, Case5BothFock) {
  expect_rate(transition_rate(n, TransitionDirection::down, photons(), reservoir_quanta(), c),
              n * pub.reservoir() + n * pub.field(), {});
  const double w = pub.reservoir_fock_weight(n);
  expect_rate(transition_rate(n, TransitionDirection::up, photons(), reservoir_quanta(), c), 0.0,
              {{kQuantumA.omega_p, w},
               {kQuantumB.omega_p, w},
               {kPhotonPerp.omega_p, pub.photon_weight(n, kPhotonPerp)},
               {kPhotonSlant.omega_p, pub.photon_weight(n, kPhotonSlant)}});
}

TEST_P(NineCases, Case6FieldFockReservoirThermal) {
  expect_rate(transition_rate(n, TransitionDirection::down, photons(), Thermal{T}, c),
              n * pub.reservoir() * pub.stim(T) + n * pub.field(), {});
  expect_rate(transition_rate(n, TransitionDirection::up, photons(), Thermal{T}, c),
              (n + 1) * pub.reservoir() * pub.nbar(T),
              {{kPhotonPerp.omega_p, pub.photon_weight(n, kPhotonPerp)},
               {kPhotonSlant.omega_p, pub.photon_weight(n, kPhotonSlant)}});
}

TEST_P(NineCases, Case7FieldThermal) {
  expect_rate(transition_rate(n, TransitionDirection::down, Thermal{T}, Vacuum{}, c),
              n * pub.reservoir() + n * pub.field() * pub.stim(T), {});
  expect_rate(transition_rate(n, TransitionDirection::up, Thermal{T}, Vacuum{}, c),
              (n + 1) * pub.field() * pub.nbar(T), {});
}

TEST_P(NineCases, Case8FieldThermalReservoirFock) {
  expect_rate(transition_rate(n, TransitionDirection::down, Thermal{T}, reservoir_quanta(), c),
              n * pub.reservoir() + n * pub.field() * pub.stim(T), {});
  const double w = pub.reservoir_fock_weight(n);
  expect_rate(transition_rate(n, TransitionDirection::up, Thermal{T}, reservoir_quanta(), c),
              (n + 1) * pub.field() * pub.nbar(T),
              {{kQuantumA.omega_p, w}, {kQuantumB.omega_p, w}});
}

TEST_P(NineCases, Case9BothThermal) {
  expect_rate(transition_rate(n, TransitionDirection::down, Thermal{T}, Thermal{T}, c),
              (n * pub.reservoir() + n * pub.field()) * pub.stim(T), {});
  expect_rate(transition_rate(n, TransitionDirection::up, Thermal{T}, Thermal{T}, c),
              ((n + 1) * pub.field() + (n + 1) * pub.reservoir()) * pub.nbar(T), {});
}

INSTANTIATE_TEST_SUITE_P(Occupations, NineCases, ::testing::Values(1, 2, 5));

TEST(TransitionRate, UnitParametersGiveUnitDecay) {
  const SpectralRate r =
      transition_rate(1, TransitionDirection::down, Vacuum{}, Vacuum{}, config(1, 1, 0, 1));
  EXPECT_EQ(r.smooth, 1.0);
}

TEST(TransitionRate, SinglePerpendicularResonantPhoton) {
  const PhysicalConfig c = config(1.4, 1.0, 0.3, 0.0);
  const FieldOccupation photon = Fock<FieldQuantum>{{{{0, 1, 0}, c.omega, 1}}};
  for (int n : {0, 1, 3}) {
    const SpectralRate r = transition_rate(n, TransitionDirection::up, photon, Vacuum{}, c);
    ASSERT_EQ(r.resonances.size(), 1u);
    EXPECT_TRUE(near_rel(r.resonances[0].weight, (n + 1) * c.e * c.e / (16 * pi * pi * c.m), 1e-14));
  }
}

TEST(TransitionRate, GroundStateHasNoDownRate) {
  const PhysicalConfig c = config(1, 1, 0.5, 0.3);
  EXPECT_TRUE(transition_rate(0, TransitionDirection::down, Thermal{1.0}, Thermal{1.0}, c).is_zero());
  EXPECT_TRUE(general_down_rate(0, CouplingFunction::special(0.3), c).is_zero());
}

TEST(TransitionRate, LinearOccupationScaling) {
  const PhysicalConfig c = config(1.1, 0.8, 0.2, 0.05);
  const SpectralRate d1 = transition_rate(1, TransitionDirection::down, Thermal{0.5}, Vacuum{}, c);
  const SpectralRate u0 = transition_rate(0, TransitionDirection::up, Thermal{0.5}, Thermal{2.0}, c);
  for (int n = 1; n <= 6; ++n) {
    EXPECT_TRUE(near_rel(transition_rate(n, TransitionDirection::down, Thermal{0.5}, Vacuum{}, c).smooth,
                         n * d1.smooth, 1e-14));
    EXPECT_TRUE(near_rel(transition_rate(n, TransitionDirection::up, Thermal{0.5}, Thermal{2.0}, c).smooth,
                         (n + 1) * u0.smooth, 1e-14));
  }
}

TEST(TransitionRate, ZeroTemperatureReducesToVacuum) {
  const PhysicalConfig c = config(1.2, 1.7, 0.6, 0.04);
  for (auto dir : {TransitionDirection::down, TransitionDirection::up}) {
    const SpectralRate vac = transition_rate(3, dir, Vacuum{}, Vacuum{}, c);
    EXPECT_EQ(transition_rate(3, dir, Thermal{0.0}, Thermal{0.0}, c).smooth, vac.smooth);
    EXPECT_EQ(transition_rate(3, dir, Thermal{0.0}, Vacuum{}, c).smooth, vac.smooth);
    EXPECT_EQ(transition_rate(3, dir, Vacuum{}, Thermal{0.0}, c).smooth, vac.smooth);
    // Fock smooth parts equal the vacuum ones.
    EXPECT_EQ(transition_rate(3, dir, photons(), reservoir_quanta(), c).smooth, vac.smooth);
  }
}

TEST(TransitionRate, DetailedBalanceForEqualTemperatures) {
  const PhysicalConfig c = config(0.9, 1.3, 0.35, 0.01);
  for (int n = 1; n <= 5; ++n) {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
      const double T = c.omega / x;
      const double up = transition_rate(n, TransitionDirection::up, Thermal{T}, Thermal{T}, c).smooth;
      const double down =
          transition_rate(n, TransitionDirection::down, Thermal{T}, Thermal{T}, c).smooth;
      EXPECT_TRUE(near_rel(up / down, (n + 1.0) / n * std::exp(-x), 1e-12)) << n << " " << x;
    }
  }
}

TEST(TransitionRate, NonNegativeForRandomInputs) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 3.0);
  std::uniform_int_distribution<int> occ(0, 8);
  for (int i = 0; i < 300; ++i) {
    const PhysicalConfig c = config(u(rng), u(rng), u(rng) - 1.5, u(rng));
    const FieldOccupation field = i % 3 == 0 ? FieldOccupation{Vacuum{}}
                                  : i % 3 == 1 ? FieldOccupation{Thermal{u(rng)}}
                                               : photons();
    const ReservoirOccupation res = i % 2 == 0 ? ReservoirOccupation{Thermal{u(rng)}}
                                               : reservoir_quanta();
    for (auto dir : {TransitionDirection::down, TransitionDirection::up}) {
      const SpectralRate r = transition_rate(occ(rng), dir, field, res, c);
      EXPECT_GE(r.smooth, 0.0);
      for (const auto& z : r.resonances) EXPECT_GE(z.weight, 0.0);
    }
  }
}

TEST(GeneralDownRate, SpecialCouplingMatchesFactoredRule) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.05, 4.0);
  for (int i = 0; i < 50; ++i) {
    const PhysicalConfig c = config(u(rng), u(rng), u(rng), u(rng));
    const int n = 1 + i % 6;
    const double general = general_down_rate(n, CouplingFunction::special(c.beta), c).smooth;
    const double factored =
        transition_rate(n, TransitionDirection::down, Vacuum{}, Vacuum{}, c).smooth;
    EXPECT_TRUE(near_rel(general, factored, 1e-12));
    EXPECT_TRUE(near_rel(general, n * c.beta / c.m + n * c.omega * c.omega * c.e * c.e / (6 * pi * c.m),
                         1e-12));
  }
}

TEST(GeneralDownRate, NoCouplingNoDecay) {
  const PhysicalConfig c = config(1, 1, 0, 0);
  const auto none = CouplingFunction::general([](double) { return 0.0; });
  EXPECT_EQ(general_down_rate(4, none, c).smooth, 0.0);
  const PhysicalConfig charged = config(1, 2, 0.5, 0);
  const auto custom = CouplingFunction::general([](double w) { return 0.1 / w; });
  EXPECT_TRUE(near_rel(general_down_rate(2, custom, charged).smooth,
                       2 * general_down_rate(1, custom, charged).smooth, 1e-15));
}

TEST(EvaluateSpectralRate, SmoothOnly) {
  const SpectralRate r{0.003, {}};
  const Probability p = evaluate_spectral_rate(r, 7.0, 0.1, BroadeningKernel::boxcar, 1.0);
  EXPECT_EQ(p.value, 0.003 * 7.0);
  EXPECT_TRUE(p.perturbative);
}

TEST(EvaluateSpectralRate, BoxcarResonance) {
  const SpectralRate r{0.0, {{1.0, 0.02}, {1.3, 5.0}}};
  const double eta = 0.2;
  const Probability p = evaluate_spectral_rate(r, 2.0, eta, BroadeningKernel::boxcar, 1.0);
  // Only the on-resonance quantum contributes; K(0) = 1/eta.
  EXPECT_DOUBLE_EQ(p.value, 0.02 / eta * 2.0);
}

TEST(EvaluateSpectralRate, LorentzianIsNormalized) {
  double integral = 0.0;
  const double eta = 0.05, dx = 1e-4;
  for (double x = -200.0; x <= 200.0; x += dx) integral += broadening(BroadeningKernel::lorentzian, eta, x) * dx;
  EXPECT_NEAR(integral, 1.0, 2e-4);
  EXPECT_DOUBLE_EQ(broadening(BroadeningKernel::lorentzian, eta, 0.0), 2.0 / (pi * eta));
}

TEST(EvaluateSpectralRate, FlagsNonPerturbativeProbability) {
  const SpectralRate r{0.05, {}};
  const Probability small = evaluate_spectral_rate(r, 1.0, 0.1, BroadeningKernel::boxcar, 1.0);
  EXPECT_TRUE(small.perturbative);
  const Probability big = evaluate_spectral_rate(r, 3.0, 0.1, BroadeningKernel::boxcar, 1.0);
  EXPECT_FALSE(big.perturbative);
  EXPECT_DOUBLE_EQ(big.raw, 0.15);
  const Probability huge = evaluate_spectral_rate(r, 100.0, 0.1, BroadeningKernel::boxcar, 1.0);
  EXPECT_EQ(huge.value, 1.0);
  EXPECT_TRUE(throws_code([&] { evaluate_spectral_rate(r, 1.0, 0.0, BroadeningKernel::boxcar, 1.0); },
                          ErrorCode::domain));
}

}  // namespace
}  // namespace dqo
