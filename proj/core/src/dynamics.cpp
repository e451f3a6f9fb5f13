#include "dqo/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dqo/error.hpp"
#include "fit.hpp"

namespace dqo {

namespace {

// inertia * qddot + damping * qdot + stiffness * q = 0
struct LinearOscillator {
  double inertia;
  double damping;
  double stiffness;

  double acceleration(double q, double v) const { return -(damping * v + stiffness * q) / inertia; }
};

std::size_t step_count(double t_end, double h) {
  require(h > 0.0 && std::isfinite(h), ErrorCode::domain, "step must be positive");
  require(t_end > 0.0 && std::isfinite(t_end), ErrorCode::domain, "t_end must be positive");
  const double steps = std::round(t_end / h);
  require(steps >= 1.0, ErrorCode::precondition, "t_end shorter than one step");
  require(steps < 1e8, ErrorCode::resource, "too many time steps");
  return static_cast<std::size_t>(steps);
}

void require_step(const PhysicalConfig& config, double h) {
  const double fastest = std::max(config.omega, config.friction_rate());
  require(h * fastest < 0.1, ErrorCode::precondition,
          "step too coarse: need h * max(omega, beta/m) < 0.1");
}

Trajectory integrate_rk4(const LinearOscillator& osc, double q0, double v0, double h,
                         std::size_t steps) {
  Trajectory traj;
  traj.h = h;
  traj.q.resize(steps + 1);
  traj.qdot.resize(steps + 1);
  double q = q0;
  double v = v0;
  traj.q[0] = q;
  traj.qdot[0] = v;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double k1q = v;
    const double k1v = osc.acceleration(q, v);
    const double k2q = v + 0.5 * h * k1v;
    const double k2v = osc.acceleration(q + 0.5 * h * k1q, k2q);
    const double k3q = v + 0.5 * h * k2v;
    const double k3v = osc.acceleration(q + 0.5 * h * k2q, k3q);
    const double k4q = v + h * k3v;
    const double k4v = osc.acceleration(q + h * k3q, k4q);
    q += h / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    traj.q[k] = q;
    traj.qdot[k] = v;
  }
  return traj;
}

}  // namespace

Trajectory solve_markovian(const PhysicalConfig& config, double q0, double v0, double t_end,
                           double h) {
  config.validate();
  const std::size_t steps = step_count(t_end, h);
  require_step(config, h);
  const LinearOscillator osc{1.0, config.friction_rate(), config.omega * config.omega};
  return integrate_rk4(osc, q0, v0, h, steps);
}

Trajectory solve_with_radiation_reaction(const PhysicalConfig& config, double q0, double v0,
                                         double t_end, double h) {
  config.validate();
  const double tau = config.tau();
  require(tau * config.omega < 0.1, ErrorCode::model_validity,
          "radiation reaction: tau * omega must be below 0.1 (got " +
              std::to_string(tau * config.omega) + ")");
  const std::size_t steps = step_count(t_end, h);
  require_step(config, h);
  const double w2 = config.omega * config.omega;
  const double gamma = config.friction_rate();
  const LinearOscillator osc{1.0 + tau * gamma, gamma + tau * w2, w2};
  return integrate_rk4(osc, q0, v0, h, steps);
}

Trajectory solve_nonmarkovian(const PhysicalConfig& config, const MemoryKernel& kernel,
                              double q0, double v0, double t_end, double h) {
  config.validate();
  const std::size_t steps = step_count(t_end, h);
  require_step(config, h);
  require(h * kernel.cutoff() < 0.5, ErrorCode::precondition,
          "step too coarse: need h * cutoff < 0.5");

  const std::vector<double> gamma = kernel.sample(h, steps + 1);
  const bool memoryless = std::all_of(gamma.begin(), gamma.end(), [](double g) { return g == 0.0; });
  const double w2 = config.omega * config.omega;

  Trajectory traj;
  traj.h = h;
  traj.q.resize(steps + 1);
  traj.qdot.resize(steps + 1);
  traj.q[0] = q0;
  traj.qdot[0] = v0;
  double accel = -w2 * q0;  // the memory integral vanishes at t = 0

  for (std::size_t n = 0; n < steps; ++n) {
    // Known part of C_{n+1}; the remaining term is h gamma_0 qdot_{n+1} / 2.
    double history = 0.0;
    if (!memoryless) {
      const std::size_t next = n + 1;
      history = 0.5 * gamma[next] * traj.qdot[0];
      for (std::size_t j = 1; j < next; ++j) history += gamma[next - j] * traj.qdot[j];
      history *= h;
    }
    const double qn = traj.q[n];
    const double vn = traj.qdot[n];
    // Trapezoidal step:
    //   q' = q + h/2 (v + v'),  v' = v + h/2 (a + a'),  a' = -w2 q' - history - h g0 v'/2
    const double lhs = 1.0 + 0.25 * h * h * w2 + 0.25 * h * h * gamma[0];
    const double rhs = vn + 0.5 * h * accel - 0.5 * h * w2 * (qn + 0.5 * h * vn) - 0.5 * h * history;
    const double v_next = rhs / lhs;
    const double q_next = qn + 0.5 * h * (vn + v_next);
    accel = -w2 * q_next - history - 0.5 * h * gamma[0] * v_next;
    traj.q[n + 1] = q_next;
    traj.qdot[n + 1] = v_next;
  }
  return traj;
}

std::vector<double> energy(const PhysicalConfig& config, const Trajectory& traj) {
  require(traj.q.size() == traj.qdot.size(), ErrorCode::domain,
          "energy: q and qdot lengths differ");
  const double w2 = config.omega * config.omega;
  std::vector<double> out(traj.q.size());
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = 0.5 * config.m * (traj.qdot[k] * traj.qdot[k] + w2 * traj.q[k] * traj.q[k]);
  }
  return out;
}

double fit_energy_decay_rate(const PhysicalConfig& config, const Trajectory& traj,
                             double t_from) {
  traj.validate();
  const std::vector<double> e = energy(config, traj);
  std::vector<double> t, log_e;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (traj.time(k) < t_from) continue;
    require(e[k] > 0.0, ErrorCode::domain, "fit_energy_decay_rate: energy must stay positive");
    t.push_back(traj.time(k));
    log_e.push_back(std::log(e[k]));
  }
  return -detail::least_squares_slope(t, log_e);
}

}  // namespace dqo
