#pragma once

#include <vector>

#include "dqo/bath.hpp"
#include "dqo/config.hpp"
#include "dqo/coupling.hpp"

namespace dqo {

// A weight * delta(location - reference) * t contribution to a transition
// probability. `location` is the frequency of the bath quantum.
struct Resonance {
  double location = 0.0;
  double weight = 0.0;
};

// First-order transition probability per unit time:
//   P(t) = smooth * t + sum_l weight_l * delta(location_l - reference) * t
// Delta terms stay symbolic until evaluate_spectral_rate broadens them.
struct SpectralRate {
  double smooth = 0.0;
  std::vector<Resonance> resonances;

  bool is_zero() const { return smooth == 0.0 && resonances.empty(); }
};

enum class TransitionDirection { down, up };

// n -> n-1 rate for an arbitrary coupling with both baths in vacuum:
//   4 pi^2 omega^3 n |f(omega)|^2 / m + n omega^2 e^2 / (6 pi m).
// n = 0 gives the zero rate.
SpectralRate general_down_rate(int n, const CouplingFunction& coupling,
                               const PhysicalConfig& config);

// n -> n-1 or n -> n+1 rate for the special coupling with the vacuum field
// and the reservoir in any combination of vacuum, Fock and thermal states.
//
// The result factors over the two baths. Each bath contributes its vacuum
// decay rate (beta/m for the reservoir, omega^2 e^2 / (6 pi m) for the
// field) times
//   down: n * (1 + nbar)   with nbar = 0 unless the bath is thermal,
//   up:   (n+1) * nbar,
// and every Fock quantum adds an up-transition resonance at its frequency.
// Fock down rates carry no stimulated enhancement.
SpectralRate transition_rate(int n, TransitionDirection direction,
                             const FieldOccupation& field,
                             const ReservoirOccupation& reservoir,
                             const PhysicalConfig& config);

enum class BroadeningKernel { boxcar, lorentzian };

struct Probability {
  double value = 0.0;         // min(raw, 1)
  double raw = 0.0;           // smooth t + broadened resonances, unclamped
  bool perturbative = true;   // false once raw exceeds 0.1
};

inline constexpr double kPerturbativeLimit = 0.1;

// Normalized broadening kernel K_eta(x). Boxcar has width eta (height
// 1/eta); Lorentzian has full width at half maximum eta.
double broadening(BroadeningKernel shape, double eta, double x);

// smooth * t + sum weight * K_eta(location - reference) * t.
Probability evaluate_spectral_rate(const SpectralRate& rate, double t, double eta,
                                   BroadeningKernel shape, double reference);

}  // namespace dqo
