#include "dqo/exchange.hpp"

#include <numbers>

#include "dqo/thermal.hpp"

namespace dqo {

namespace {

constexpr double kPi = std::numbers::pi;

double smooth_prefactor(const FieldQuantum& photon, const CouplingFunction& coupling,
                        const PhysicalConfig& config) {
  const double wp = photon.omega_p;
  return config.e * config.e * wp * coupling(wp) * photon.epsilon_x_squared() /
         (2.0 * kPi * config.m * config.m);
}

}  // namespace

SpectralRate photon_absorption_rate(const FieldQuantum& photon,
                                    const ReservoirOccupation& reservoir,
                                    const CouplingFunction& coupling,
                                    const PhysicalConfig& config) {
  config.validate();
  photon.validate();
  validate(reservoir);
  SpectralRate rate;
  rate.smooth = smooth_prefactor(photon, coupling, config);
  if (const auto* thermal = std::get_if<Thermal>(&reservoir)) {
    rate.smooth *= stimulated_factor(photon.omega_p, thermal->temperature);
  }
  return rate;
}

SpectralRate photon_emission_rate(const FieldQuantum& target,
                                  const ReservoirOccupation& reservoir,
                                  const CouplingFunction& coupling,
                                  const PhysicalConfig& config) {
  config.validate();
  target.validate();
  validate(reservoir);
  SpectralRate rate;
  if (const auto* thermal = std::get_if<Thermal>(&reservoir)) {
    rate.smooth = smooth_prefactor(target, coupling, config) *
                  bose_occupation(target.omega_p, thermal->temperature);
  } else if (const auto* fock = std::get_if<Fock<ReservoirQuantum>>(&reservoir)) {
    const double prefactor = config.e * config.e * target.epsilon_x_squared() /
                             (8.0 * kPi * kPi * config.m * config.m * target.omega_p);
    for (const auto& quantum : fock->quanta) {
      rate.resonances.push_back({quantum.omega_p, prefactor * coupling(quantum.omega_p)});
    }
  }
  return rate;
}

}  // namespace dqo
