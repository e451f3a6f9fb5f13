#include "dqo/kernel.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "dqo/error.hpp"

namespace dqo {

namespace {

constexpr int kPanelOrder = 20;
constexpr double kRelativeTolerance = 1e-8;
// Exact cos/sin are recomputed this often while rotating phases on a grid.
constexpr std::size_t kReseedInterval = 256;

using Rule = boost::math::quadrature::gauss<double, kPanelOrder>;

struct NodeSet {
  std::vector<double> omega;
  std::vector<double> weight;  // quadrature weight times the integrand prefactor
};

// Composite Gauss-Legendre nodes on [0, cutoff] with weights folded into
// (8 pi / m) |f(w)|^2 w^3.
NodeSet make_nodes(const MemoryKernel& kernel, int panels) {
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  const double width = kernel.cutoff() / panels;
  const double prefactor = 8.0 * std::numbers::pi / kernel.mass();

  NodeSet nodes;
  nodes.omega.reserve(static_cast<std::size_t>(panels) * kPanelOrder);
  nodes.weight.reserve(static_cast<std::size_t>(panels) * kPanelOrder);
  for (int p = 0; p < panels; ++p) {
    const double center = (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      for (double sign : {-1.0, 1.0}) {
        if (abscissa[i] == 0.0 && sign > 0.0) continue;
        const double w = center + sign * half * abscissa[i];
        const double integrand = prefactor * kernel.coupling()(w) * w * w * w;
        nodes.omega.push_back(w);
        nodes.weight.push_back(half * weights[i] * integrand);
      }
    }
  }
  return nodes;
}

int panels_for(const MemoryKernel& kernel, double t_max) {
  return kernel.nodes_for(t_max) / kPanelOrder;
}

double integrate(const NodeSet& nodes, double t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.omega.size(); ++i) {
    sum += nodes.weight[i] * std::cos(nodes.omega[i] * t);
  }
  return sum;
}

double absolute_scale(const NodeSet& nodes) {
  double sum = 0.0;
  for (double w : nodes.weight) sum += std::abs(w);
  return sum;
}

}  // namespace

void Trajectory::validate() const {
  require(q.size() == qdot.size(), ErrorCode::domain, "trajectory: q and qdot lengths differ");
  require(q.size() >= 2, ErrorCode::domain, "trajectory needs at least two samples");
  require(h > 0.0, ErrorCode::domain, "trajectory step must be positive");
}

MemoryKernel::MemoryKernel(CouplingFunction coupling, double mass, double cutoff,
                           int quadrature_points)
    : coupling_(std::move(coupling)),
      mass_(mass),
      cutoff_(cutoff),
      quadrature_points_(quadrature_points) {
  require(mass > 0.0, ErrorCode::domain, "kernel: mass must be positive");
  require(std::isfinite(cutoff) && cutoff > 0.0, ErrorCode::domain,
          "kernel: cutoff must be positive");
  require(quadrature_points >= kMinQuadraturePoints, ErrorCode::domain,
          "kernel: quadrature_points must be at least 64");
}

int MemoryKernel::nodes_for(double t_max) const {
  const double oscillations = cutoff_ * std::max(t_max, 0.0) / (2.0 * std::numbers::pi);
  const double needed = std::max<double>(quadrature_points_, 10.0 * oscillations);
  const int panels = std::max(1, static_cast<int>(std::ceil(needed / kPanelOrder)));
  return panels * kPanelOrder;
}

double MemoryKernel::gamma(double t) const {
  require(t >= 0.0, ErrorCode::domain, "gamma: t must be non-negative");
  const int panels = panels_for(*this, t);
  const NodeSet coarse = make_nodes(*this, panels);
  const NodeSet fine = make_nodes(*this, 2 * panels);
  const double scale = absolute_scale(fine);
  if (scale == 0.0) return 0.0;
  const double coarse_value = integrate(coarse, t);
  const double fine_value = integrate(fine, t);
  const double error = std::abs(fine_value - coarse_value);
  if (error > kRelativeTolerance * scale) {
    fail(ErrorCode::numerical, "gamma: quadrature did not converge at t = " +
                                   std::to_string(t) + " (relative error estimate " +
                                   std::to_string(error / scale) + ")");
  }
  return fine_value;
}

std::vector<double> MemoryKernel::sample(double h, std::size_t count) const {
  require(h > 0.0, ErrorCode::domain, "kernel sample: step must be positive");
  std::vector<double> out(count, 0.0);
  if (count == 0) return out;

  const double t_max = h * static_cast<double>(count - 1);
  const NodeSet nodes = make_nodes(*this, panels_for(*this, t_max));
  const double scale = absolute_scale(nodes);
  if (scale == 0.0) return out;

  const std::size_t n = nodes.omega.size();
  std::vector<double> c(n), s(n), cr(n), sr(n);
  for (std::size_t i = 0; i < n; ++i) {
    cr[i] = std::cos(nodes.omega[i] * h);
    sr[i] = std::sin(nodes.omega[i] * h);
  }
  for (std::size_t k = 0; k < count; ++k) {
    if (k % kReseedInterval == 0) {
      const double t = h * static_cast<double>(k);
      for (std::size_t i = 0; i < n; ++i) {
        c[i] = std::cos(nodes.omega[i] * t);
        s[i] = std::sin(nodes.omega[i] * t);
      }
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += nodes.weight[i] * c[i];
    out[k] = sum;
    for (std::size_t i = 0; i < n; ++i) {
      const double cn = c[i] * cr[i] - s[i] * sr[i];
      s[i] = s[i] * cr[i] + c[i] * sr[i];
      c[i] = cn;
    }
  }

  for (std::size_t k : {count - 1, (count - 1) / 2}) {
    const double reference = gamma(h * static_cast<double>(k));
    if (std::abs(reference - out[k]) > kRelativeTolerance * scale) {
      fail(ErrorCode::numerical, "kernel sample: grid value deviates from reference at k = " +
                                     std::to_string(k));
    }
  }
  return out;
}

std::vector<double> memory_convolution(std::span<const double> gamma_grid,
                                       std::span<const double> qdot, double h) {
  require(gamma_grid.size() >= qdot.size(), ErrorCode::domain,
          "memory_convolution: kernel grid shorter than velocity history");
  const std::size_t n = qdot.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double sum = 0.5 * (gamma_grid[i] * qdot[0] + gamma_grid[0] * qdot[i]);
    for (std::size_t j = 1; j < i; ++j) sum += gamma_grid[i - j] * qdot[j];
    out[i] = h * sum;
  }
  return out;
}

std::vector<double> convolve_memory(const MemoryKernel& kernel, const Trajectory& traj) {
  traj.validate();
  require(traj.h * kernel.cutoff() < 0.5, ErrorCode::precondition,
          "convolve_memory: step too coarse, need h * cutoff < 0.5");
  const std::vector<double> gamma_grid = kernel.sample(traj.h, traj.size());
  return memory_convolution(gamma_grid, traj.qdot, traj.h);
}

double markov_residual(const MemoryKernel& kernel, const Trajectory& traj, double beta) {
  require(kernel.coupling().is_special(), ErrorCode::precondition,
          "markov_residual: requires the special coupling");
  require(beta >= 0.0, ErrorCode::domain, "markov_residual: beta must be non-negative");
  const std::vector<double> drag = convolve_memory(kernel, traj);
  const double rate = beta / kernel.mass();
  const double settle = 10.0 / kernel.cutoff();

  double sum_sq = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    if (traj.time(k) - traj.t0 <= settle) continue;
    const double diff = drag[k] - rate * traj.qdot[k];
    sum_sq += diff * diff;
    ++used;
  }
  require(used > 0, ErrorCode::precondition,
          "markov_residual: trajectory ends before t = 10 / cutoff");
  return std::sqrt(sum_sq / static_cast<double>(used));
}

}  // namespace dqo
