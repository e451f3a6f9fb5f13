#pragma once

#include <vector>

#include "dqo/config.hpp"
#include "dqo/kernel.hpp"
#include "dqo/trajectory.hpp"

namespace dqo {

// Deterministic (expectation-value) solvers. The noise terms have zero mean
// in every bath eigenstate, so trajectories start at t0 = 0 and integrate
// the homogeneous equations of motion.

// qddot + (beta/m) qdot + omega^2 q = 0 with classical RK4.
// Requires h * max(omega, beta/m) < 0.1.
Trajectory solve_markovian(const PhysicalConfig& config, double q0, double v0, double t_end,
                           double h);

// qddot + omega^2 q + int_0^t qdot(t') gamma(t - t') dt' = 0.
//
// Second-order scheme: trapezoidal rule in time with the product-trapezoidal
// memory sum. The step is implicit only through gamma(0) qdot_{n+1}, so the
// corrector is solved in closed form. Requires h * cutoff < 0.5 in addition
// to the Markovian step bound.
Trajectory solve_nonmarkovian(const PhysicalConfig& config, const MemoryKernel& kernel,
                              double q0, double v0, double t_end, double h);

// qddot + omega^2 q + (beta/m) qdot - tau qdddot = 0 after reduction of
// order, qdddot -> d/dt(-omega^2 q - (beta/m) qdot):
//
//   (1 + tau beta/m) qddot + (beta/m + tau omega^2) qdot + omega^2 q = 0.
//
// Same RK4 path as solve_markovian, bitwise identical when e = 0.
// Throws Error{model_validity} unless tau * omega < 0.1.
Trajectory solve_with_radiation_reaction(const PhysicalConfig& config, double q0, double v0,
                                         double t_end, double h);

// E = m qdot^2 / 2 + m omega^2 q^2 / 2 at every sample.
std::vector<double> energy(const PhysicalConfig& config, const Trajectory& traj);

// Least-squares slope of -log E(t) over samples with t >= t_from.
double fit_energy_decay_rate(const PhysicalConfig& config, const Trajectory& traj,
                             double t_from = 0.0);

}  // namespace dqo
