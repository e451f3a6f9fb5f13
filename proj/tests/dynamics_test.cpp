#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "dqo/dynamics.hpp"
#include "test_util.hpp"

namespace dqo {
namespace {

using std::numbers::pi;
using test::near_rel;
using test::throws_code;

PhysicalConfig unit_config() {
  PhysicalConfig c;
  c.m = 1.0;
  c.omega = 1.0;
  c.cutoff = 100.0;
  return c;
}

// Closed-form solution of qddot + g qdot + w^2 q = 0 (underdamped).
struct DampedCosine {
  double g, w, q0, v0;
  double operator()(double t) const {
    const double wd = std::sqrt(w * w - 0.25 * g * g);
    const double a = q0, b = (v0 + 0.5 * g * q0) / wd;
    return std::exp(-0.5 * g * t) * (a * std::cos(wd * t) + b * std::sin(wd * t));
  }
};

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

TEST(SolveMarkovian, UndampedOscillatorConservesEnergy) {
  const PhysicalConfig c = unit_config();
  const double period = 2 * pi;
  const Trajectory traj = solve_markovian(c, 1.0, 0.0, 100 * period, period / 2000);
  const auto e = energy(c, traj);
  for (double ek : e) ASSERT_TRUE(near_rel(ek, 0.5, 1e-10));
  EXPECT_NEAR(traj.q.back(), 1.0, 1e-6);
  EXPECT_NEAR(traj.q[500], std::cos(traj.time(500)), 1e-10);
}

TEST(SolveMarkovian, MatchesClosedFormOnFineGrid) {
  PhysicalConfig c = unit_config();
  c.beta = 0.05;
  const double period = 2 * pi;
  const double h = period / 200;
  // RK4 phase error grows ~ (h omega)^5 / 120 per step, so 1e-8 holds for
  // the first 40 steps (a fifth of a period); a full period reaches ~5e-8.
  const Trajectory traj = solve_markovian(c, 1.0, 0.3, 40 * h, h);
  const DampedCosine exact{c.friction_rate(), c.omega, 1.0, 0.3};
  for (std::size_t k = 0; k < traj.size(); ++k) {
    EXPECT_NEAR(traj.q[k], exact(traj.time(k)), 1e-8) << k;
  }
}

TEST(SolveMarkovian, FourthOrderConvergence) {
  PhysicalConfig c = unit_config();
  c.beta = 0.2;
  const DampedCosine exact{0.2, 1.0, 1.0, 0.0};
  auto err = [&](double h) {
    const Trajectory t = solve_markovian(c, 1.0, 0.0, 10.0, h);
    return std::abs(t.q.back() - exact(10.0));
  };
  const double ratio = err(0.05) / err(0.025);
  EXPECT_GT(ratio, 14.0);
  EXPECT_LT(ratio, 18.0);
}

TEST(SolveMarkovian, EnvelopeFollowsFrictionRate) {
  PhysicalConfig c = unit_config();
  c.beta = 0.04;
  c.m = 2.0;
  const Trajectory traj = solve_markovian(c, 1.0, 0.0, 30 * 2 * pi, 2 * pi / 400);
  // Local maxima of q, refined with a parabola through three samples.
  std::vector<std::pair<double, double>> peaks;
  for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
    const double a = traj.q[k - 1], b = traj.q[k], d = traj.q[k + 1];
    if (b > a && b >= d) {
      const double denom = a - 2 * b + d;
      const double offset = 0.5 * (a - d) / denom;
      peaks.emplace_back(traj.time(k) + offset * traj.h, b - 0.25 * (a - d) * offset);
    }
  }
  ASSERT_GE(peaks.size(), 25u);
  const double rate = c.beta / (2 * c.m);
  for (const auto& [t, value] : peaks) {
    const double expected = peaks.front().second * std::exp(-rate * (t - peaks.front().first));
    EXPECT_TRUE(near_rel(value, expected, 1e-3)) << t;
  }
}

TEST(SolveMarkovian, LinearInInitialConditions) {
  PhysicalConfig c = unit_config();
  c.beta = 0.1;
  const Trajectory a = solve_markovian(c, 0.7, -0.2, 20.0, 0.01);
  const Trajectory b = solve_markovian(c, 2.1, -0.6, 20.0, 0.01);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(b.q[k], 3.0 * a.q[k], 1e-13);
}

TEST(SolveMarkovian, RejectsCoarseStep) {
  const PhysicalConfig c = unit_config();
  EXPECT_TRUE(throws_code([&] { solve_markovian(c, 1, 0, 10, 0.2); }, ErrorCode::precondition));
  PhysicalConfig heavy_friction = c;
  heavy_friction.beta = 50.0;
  EXPECT_TRUE(
      throws_code([&] { solve_markovian(heavy_friction, 1, 0, 10, 0.01); }, ErrorCode::precondition));
}

TEST(SolveMarkovian, EnergyNeverIncreasesWithFriction) {
  PhysicalConfig c = unit_config();
  c.beta = 0.3;
  const Trajectory traj = solve_markovian(c, 1.0, 0.5, 40.0, 0.01);
  const auto e = energy(c, traj);
  for (std::size_t k = 1; k < e.size(); ++k) ASSERT_LE(e[k], e[k - 1] * (1 + 1e-12)) << k;
}

TEST(Energy, PointwiseDefinition) {
  const PhysicalConfig c = unit_config();
  Trajectory rest;
  rest.h = 0.1;
  rest.q = {0.0, 0.0};
  rest.qdot = {0.0, 0.0};
  EXPECT_EQ(energy(c, rest), (std::vector<double>{0.0, 0.0}));
  PhysicalConfig c2 = c;
  c2.m = 3.0;
  c2.omega = 2.0;
  Trajectory one;
  one.h = 0.1;
  one.q = {0.5, 0.0};
  one.qdot = {1.0, 2.0};
  const auto e = energy(c2, one);
  EXPECT_DOUBLE_EQ(e[0], 0.5 * 3 * 1 + 0.5 * 3 * 4 * 0.25);
  EXPECT_DOUBLE_EQ(e[1], 0.5 * 3 * 4);
}

TEST(SolveNonMarkovian, ZeroKernelIsUndampedOscillator) {
  const PhysicalConfig c = unit_config();
  const MemoryKernel kernel(CouplingFunction::special(0.0), c.m, c.cutoff);
  const Trajectory traj = solve_nonmarkovian(c, kernel, 1.0, 0.0, 1.0, 1e-4);
  for (std::size_t k = 0; k < traj.size(); k += 97) {
    EXPECT_NEAR(traj.q[k], std::cos(traj.time(k)), 1e-8);
    EXPECT_NEAR(traj.qdot[k], -std::sin(traj.time(k)), 1e-8);
  }
}

TEST(SolveNonMarkovian, ConvergesToMarkovianLimit) {
  PhysicalConfig c = unit_config();
  c.beta = 0.05;
  c.cutoff = 100.0;
  const MemoryKernel kernel(CouplingFunction::special(c.beta), c.m, c.cutoff);
  const double t_end = 10 * 2 * pi, h = 0.002;
  const Trajectory nm = solve_nonmarkovian(c, kernel, 1.0, 0.0, t_end, h);
  const Trajectory mk = solve_markovian(c, 1.0, 0.0, t_end, h);
  EXPECT_LT(max_abs_diff(nm.q, mk.q), 0.02);
}

TEST(SolveNonMarkovian, SecondOrderSelfConvergence) {
  PhysicalConfig c = unit_config();
  c.beta = 0.1;
  c.cutoff = 50.0;
  const MemoryKernel kernel(CouplingFunction::special(c.beta), c.m, c.cutoff);
  const double t_end = 6.0;  // a whole number of steps for every h below
  auto final_q = [&](double h) { return solve_nonmarkovian(c, kernel, 1.0, 0.0, t_end, h).q.back(); };
  const double q1 = final_q(0.004), q2 = final_q(0.002), q4 = final_q(0.001);
  const double reference = q4 + (q4 - q2) / 3.0;
  const double ratio = std::abs(q1 - reference) / std::abs(q2 - reference);
  EXPECT_GT(ratio, 3.0);
  EXPECT_LT(ratio, 5.0);
}

TEST(SolveNonMarkovian, RejectsCoarseStepForCutoff) {
  const PhysicalConfig c = unit_config();
  const MemoryKernel kernel(CouplingFunction::special(0.1), c.m, 100.0);
  EXPECT_TRUE(throws_code([&] { solve_nonmarkovian(c, kernel, 1, 0, 1, 0.006); },
                          ErrorCode::precondition));
}

TEST(SolveWithRadiationReaction, NeutralChargeIsBitwiseMarkovian) {
  PhysicalConfig c = unit_config();
  c.beta = 0.07;
  const Trajectory rr = solve_with_radiation_reaction(c, 1.0, 0.2, 30.0, 0.01);
  const Trajectory mk = solve_markovian(c, 1.0, 0.2, 30.0, 0.01);
  EXPECT_EQ(rr.q, mk.q);
  EXPECT_EQ(rr.qdot, mk.qdot);
}

PhysicalConfig with_tau(double tau_omega, double beta) {
  PhysicalConfig c = unit_config();
  c.beta = beta;
  c.e = std::sqrt(6 * pi * c.m * tau_omega / c.omega);
  return c;
}

TEST(SolveWithRadiationReaction, RadiativeDecayRate) {
  const PhysicalConfig c = with_tau(1e-3, 0.0);
  ASSERT_TRUE(near_rel(c.tau(), 1e-3, 1e-14));
  const double period = 2 * pi;
  const Trajectory traj = solve_with_radiation_reaction(c, 1.0, 0.0, 200 * period, period / 100);
  const double expected = c.tau() * c.omega * c.omega;
  EXPECT_TRUE(near_rel(fit_energy_decay_rate(c, traj), expected, 0.01));
}

TEST(SolveWithRadiationReaction, DecayChannelsAdd) {
  const PhysicalConfig c = with_tau(1e-3, 2e-3);
  const double period = 2 * pi;
  const Trajectory traj = solve_with_radiation_reaction(c, 1.0, 0.0, 200 * period, period / 100);
  const double expected = c.friction_rate() + c.tau() * c.omega * c.omega;
  EXPECT_TRUE(near_rel(fit_energy_decay_rate(c, traj), expected, 0.01));
  const auto e = energy(c, traj);
  for (std::size_t k = 1; k < e.size(); ++k) ASSERT_LE(e[k], e[k - 1] * (1 + 1e-12));
}

TEST(SolveWithRadiationReaction, RejectsLargeTau) {
  const PhysicalConfig c = with_tau(0.1, 0.0);
  EXPECT_TRUE(throws_code([&] { solve_with_radiation_reaction(c, 1, 0, 10, 0.01); },
                          ErrorCode::model_validity));
}

// Physical (complex) root of -tau s^3 + s^2 + g s + w^2 = 0 by Newton
// iteration in long double, started from the undamped root.
std::complex<long double> physical_root(long double tau, long double g, long double w) {
  std::complex<long double> s(-0.5L * g, w);
  for (int i = 0; i < 100; ++i) {
    const auto f = -tau * s * s * s + s * s + g * s + w * w;
    const auto df = -3.0L * tau * s * s + 2.0L * s + g;
    s -= f / df;
  }
  return s;
}

TEST(SolveWithRadiationReaction, ReducedRootsTrackFullCubic) {
  for (double tau_omega : {1e-4, 1e-3, 1e-2}) {
    for (double beta : {0.0, 1e-3, 0.05}) {
      const PhysicalConfig c = with_tau(tau_omega, beta);
      const double tau = c.tau(), g = c.friction_rate(), w = c.omega;
      // Roots of (1 + tau g) s^2 + (g + tau w^2) s + w^2.
      const double a = 1 + tau * g, b = g + tau * w * w;
      const std::complex<double> reduced =
          (-b + std::sqrt(std::complex<double>(b * b - 4 * a * w * w))) / (2 * a);
      const auto full = physical_root(tau, g, w);
      const double diff = std::abs(std::complex<double>(static_cast<double>(full.real()),
                                                        static_cast<double>(full.imag())) -
                                   reduced);
      EXPECT_LE(diff, 5 * tau_omega * tau_omega * w) << tau_omega << " " << beta;
    }
  }
}

}  // namespace
}  // namespace dqo
