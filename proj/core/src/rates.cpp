#include "dqo/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dqo/error.hpp"
#include "dqo/thermal.hpp"

namespace dqo {

namespace {

constexpr double kPi = std::numbers::pi;

// omega^2 e^2 / (6 pi m) = tau omega^2
double field_vacuum_rate(const PhysicalConfig& config) {
  return config.omega * config.omega * config.e * config.e / (6.0 * kPi * config.m);
}

template <typename Quantum>
double thermal_occupation(const BathOccupation<Quantum>& bath, double omega) {
  if (const auto* thermal = std::get_if<Thermal>(&bath)) {
    return bose_occupation(omega, thermal->temperature);
  }
  return 0.0;
}

}  // namespace

SpectralRate general_down_rate(int n, const CouplingFunction& coupling,
                               const PhysicalConfig& config) {
  config.validate();
  require(n >= 0, ErrorCode::domain, "occupation must be non-negative");
  SpectralRate rate;
  if (n == 0) return rate;
  const double w = config.omega;
  const double dn = static_cast<double>(n);
  rate.smooth = 4.0 * kPi * kPi * w * w * w * dn * coupling(w) / config.m +
                dn * w * w * config.e * config.e / (6.0 * kPi * config.m);
  return rate;
}

SpectralRate transition_rate(int n, TransitionDirection direction,
                             const FieldOccupation& field,
                             const ReservoirOccupation& reservoir,
                             const PhysicalConfig& config) {
  config.validate();
  validate(field);
  validate(reservoir);
  require(n >= 0, ErrorCode::domain, "occupation must be non-negative");

  const double w = config.omega;
  const double reservoir_rate = config.friction_rate();
  const double field_rate = field_vacuum_rate(config);
  const double nbar_reservoir = thermal_occupation(reservoir, w);
  const double nbar_field = thermal_occupation(field, w);

  SpectralRate rate;
  if (direction == TransitionDirection::down) {
    if (n == 0) return rate;
    const double dn = static_cast<double>(n);
    rate.smooth = dn * reservoir_rate * (1.0 + nbar_reservoir) +
                  dn * field_rate * (1.0 + nbar_field);
    return rate;
  }

  const double np1 = static_cast<double>(n) + 1.0;
  rate.smooth = np1 * reservoir_rate * nbar_reservoir + np1 * field_rate * nbar_field;

  if (const auto* fock = std::get_if<Fock<ReservoirQuantum>>(&reservoir)) {
    const double weight = np1 * config.beta / (4.0 * kPi * config.m * w * w);
    for (const auto& quantum : fock->quanta) {
      rate.resonances.push_back({quantum.omega_p, weight});
    }
  }
  if (const auto* fock = std::get_if<Fock<FieldQuantum>>(&field)) {
    const double prefactor = np1 * config.e * config.e * w / (16.0 * kPi * kPi * config.m);
    for (const auto& photon : fock->quanta) {
      rate.resonances.push_back(
          {photon.omega_p, prefactor * photon.epsilon_x_squared() / photon.omega_p});
    }
  }
  return rate;
}

double broadening(BroadeningKernel shape, double eta, double x) {
  require(eta > 0.0, ErrorCode::domain, "broadening width must be positive");
  switch (shape) {
    case BroadeningKernel::boxcar:
      return std::abs(x) <= 0.5 * eta ? 1.0 / eta : 0.0;
    case BroadeningKernel::lorentzian: {
      const double half = 0.5 * eta;
      return half / (kPi * (x * x + half * half));
    }
  }
  return 0.0;
}

Probability evaluate_spectral_rate(const SpectralRate& rate, double t, double eta,
                                   BroadeningKernel shape, double reference) {
  require(t >= 0.0, ErrorCode::domain, "evaluation time must be non-negative");
  require(eta > 0.0, ErrorCode::domain, "broadening width must be positive");
  double per_time = rate.smooth;
  for (const auto& r : rate.resonances) {
    per_time += r.weight * broadening(shape, eta, r.location - reference);
  }
  Probability p;
  p.raw = per_time * t;
  p.value = std::min(p.raw, 1.0);
  p.perturbative = p.raw <= kPerturbativeLimit;
  return p;
}

}  // namespace dqo
