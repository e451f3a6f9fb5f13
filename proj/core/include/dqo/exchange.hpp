#pragma once

#include "dqo/bath.hpp"
#include "dqo/config.hpp"
#include "dqo/coupling.hpp"
#include "dqo/rates.hpp"

namespace dqo {

// Photon <-> reservoir exchange with the oscillator left in its state.
// These rates do not depend on the oscillator occupation.

// Rate at which `photon` is absorbed by the reservoir:
//   e^2 w_p |f(w_p)|^2 eps_x^2 / (2 pi m^2) * S,
// S = 1 for a vacuum or Fock reservoir, 1 + nbar(w_p) for a thermal one.
SpectralRate photon_absorption_rate(const FieldQuantum& photon,
                                    const ReservoirOccupation& reservoir,
                                    const CouplingFunction& coupling,
                                    const PhysicalConfig& config);

// Rate at which the reservoir creates the photon `target`.
//   thermal: e^2 w_p |f(w_p)|^2 eps_x^2 nbar(w_p) / (2 pi m^2)
//   Fock:    one resonance per reservoir quantum at its frequency, weight
//            e^2 eps_x^2 |f(w_l)|^2 / (8 pi^2 m^2 w_p); evaluate with
//            reference frequency w_p.
//   vacuum:  zero.
SpectralRate photon_emission_rate(const FieldQuantum& target,
                                  const ReservoirOccupation& reservoir,
                                  const CouplingFunction& coupling,
                                  const PhysicalConfig& config);

}  // namespace dqo
