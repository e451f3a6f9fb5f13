#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "dqo/config.hpp"
#include "dqo/coupling.hpp"

namespace dqo {

// Brute-force check of the golden-rule rates: discretize each bath into the
// collective modes the oscillator couples to, build the rotating-wave
// Hamiltonian in a fixed total-excitation sector and evolve it exactly.

enum class BathKind { reservoir, field };

// Uniform discretization of one bath. couplings[j] is the real
// oscillator-mode matrix element g_j for a single quantum (ladder factors
// are applied in build_sector).
struct ModeGrid {
  std::vector<double> omegas;
  std::vector<double> couplings;
  double spacing = 0.0;
  BathKind kind = BathKind::reservoir;

  std::size_t size() const { return omegas.size(); }
};

// g^2 per unit mode frequency nu, from the angular reduction of the
// rotating-wave interaction with oscillator frequency omega:
//   reservoir: (omega / 2m) |f(nu)|^2 * 4 pi nu^2
//   field:     e^2 (omega / 2m) * (8 pi / 3) nu^2 / (2 (2 pi)^3 nu)
// 2 pi * spectral_density(nu = omega) is the single-quantum vacuum decay rate.
double spectral_density(BathKind kind, const CouplingFunction& coupling,
                        const PhysicalConfig& config, double nu);

// M modes at the midpoints of [band_lo, band_hi] with g_j^2 = J(nu_j) * dnu.
// Requires 0 < band_lo < omega < band_hi and M >= 1.
ModeGrid discretize(BathKind kind, const CouplingFunction& coupling,
                    const PhysicalConfig& config, double band_lo, double band_hi, int modes);

struct SectorOptions {
  // false: only the first step n -> n-1 (one quantum in the baths).
  // true: every level down to the ground state.
  bool full_cascade = false;
  // Dense storage bound; the Hamiltonian needs dimension^2 doubles.
  std::size_t max_dimension = 6000;
};

struct BasisState {
  int level = 0;                // oscillator occupation
  std::vector<int> quanta;      // global mode indices, sorted, with repetition
};

struct SectorModel {
  int n_initial = 0;
  std::vector<ModeGrid> grids;  // global mode index runs through grids in order
  std::vector<BasisState> basis;  // basis[0] is |n_initial, bath vacuum>
  Eigen::MatrixXd hamiltonian;    // relative to the energy of basis[0]

  std::size_t dimension() const { return basis.size(); }
  std::size_t mode_count() const;
};

// At most one grid of each kind. With both kinds present the field-reservoir
// exchange term couples reservoir mode j and field mode k with strength
// 2 g_j g_k / omega.
SectorModel build_sector(int n_initial, std::vector<ModeGrid> grids, const PhysicalConfig& config,
                         const SectorOptions& options = {});

struct SurvivalResult {
  std::vector<double> times;
  std::vector<double> p_stay;      // population of the initial state
  std::vector<double> p_transfer;  // population with oscillator level below n_initial
  std::vector<double> norm;        // total probability, 1 up to rounding
  // Population of |n_initial - 1, one quantum in mode m>, indexed [time][mode].
  std::vector<std::vector<double>> mode_transfer;
};

// Exact evolution by full diagonalization. Throws Error{numerical} if the
// eigensolver fails.
SurvivalResult evolve_survival(const SectorModel& model, std::span<const double> times);

struct FitWindow {
  double t_lo = 0.0;
  double t_hi = 0.0;
};

// Least-squares slope of transfer(t) over samples inside the window. The
// window must sit in the golden-rule regime: t_lo >= 10 / bandwidth and the
// largest transfer inside the window <= 0.1.
double fitted_rate(std::span<const double> times, std::span<const double> transfer,
                   const FitWindow& window, double bandwidth);

// Thermal bath realized as a mixture of Fock configurations. Each mode is
// paired with the oscillator and evolved exactly in its own excitation
// sector, starting from |n, k> with Bose weight p_k, k <= nbar + 5 sqrt(nbar)
// (rounded up). Contributions of different modes are summed, which is exact
// to first order in the coupling. Configurations are enumerated in grid
// order, then mode order, then ascending k.
struct ThermalBath {
  ModeGrid grid;
  double temperature = 0.0;
};

struct ThermalMixtureResult {
  std::vector<double> times;
  std::vector<double> p_down;  // population of level n - 1
  std::vector<double> p_up;    // population of level n + 1
  double tail_bound = 0.0;     // largest discarded Bose weight over all modes
};

ThermalMixtureResult evolve_thermal_mixture(int n, std::span<const ThermalBath> baths,
                                            const PhysicalConfig& config,
                                            std::span<const double> times);

}  // namespace dqo
