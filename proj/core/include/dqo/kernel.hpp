#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dqo/coupling.hpp"
#include "dqo/trajectory.hpp"

namespace dqo {

// Friction memory kernel
//
//   gamma(t) = (8 pi / m) * int_0^cutoff |f(w)|^2 w^3 cos(w t) dw
//
// evaluated with composite 20-point Gauss-Legendre panels. The sharp cutoff
// regularizes the Ohmic case, whose unregularized kernel is a delta function.
class MemoryKernel {
 public:
  static constexpr int kMinQuadraturePoints = 64;

  MemoryKernel(CouplingFunction coupling, double mass, double cutoff,
               int quadrature_points = kMinQuadraturePoints);

  const CouplingFunction& coupling() const { return coupling_; }
  double mass() const { return mass_; }
  double cutoff() const { return cutoff_; }
  int quadrature_points() const { return quadrature_points_; }

  // Number of quadrature nodes used for a kernel evaluated up to t_max:
  // at least quadrature_points and at least ten nodes per oscillation of
  // cos(cutoff * t_max).
  int nodes_for(double t_max) const;

  // gamma(t) for t >= 0. Throws Error{numerical} if the panel-doubling error
  // estimate exceeds 1e-8 relative to (8 pi / m) int |f|^2 w^3 dw.
  double gamma(double t) const;

  // gamma(k h) for k = 0 .. count-1, sharing one node set. Spot-checked
  // against gamma(t) at the far end of the grid.
  std::vector<double> sample(double h, std::size_t count) const;

 private:
  CouplingFunction coupling_;
  double mass_;
  double cutoff_;
  int quadrature_points_;
};

// Product-trapezoidal history integral
//   C_i = h [ gamma_i qdot_0 / 2 + sum_{j=1}^{i-1} gamma_{i-j} qdot_j + gamma_0 qdot_i / 2 ]
// given gamma sampled on the same uniform grid as qdot.
std::vector<double> memory_convolution(std::span<const double> gamma_grid,
                                       std::span<const double> qdot, double h);

// int_0^t qdot(t') gamma(t - t') dt' at every sample of `traj`.
// Requires h * cutoff < 0.5.
std::vector<double> convolve_memory(const MemoryKernel& kernel, const Trajectory& traj);

// RMS over t - t0 > 10 / cutoff of (convolution - (beta/m) qdot).
// Requires the special coupling.
double markov_residual(const MemoryKernel& kernel, const Trajectory& traj, double beta);

}  // namespace dqo
