#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dqo/bath.hpp"
#include "dqo/coupling.hpp"
#include "dqo/error.hpp"
#include "dqo/geometry.hpp"
#include "dqo/thermal.hpp"

namespace dqo {

double coupling_special(double beta, double omega) {
  require(omega > 0.0, ErrorCode::domain, "coupling_special: omega must be positive");
  require(beta >= 0.0, ErrorCode::domain, "coupling_special: beta must be non-negative");
  constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
  return beta / (four_pi_sq * omega * omega * omega);
}

CouplingFunction CouplingFunction::special(double beta) {
  require(beta >= 0.0, ErrorCode::domain, "special coupling: beta must be non-negative");
  return CouplingFunction(Special{beta});
}

CouplingFunction CouplingFunction::general(Evaluator squared_magnitude) {
  require(static_cast<bool>(squared_magnitude), ErrorCode::domain,
          "general coupling: empty evaluator");
  return CouplingFunction(General{std::move(squared_magnitude)});
}

double CouplingFunction::operator()(double omega) const {
  if (const auto* s = std::get_if<Special>(&impl_)) return coupling_special(s->beta, omega);
  require(omega > 0.0, ErrorCode::domain, "coupling: omega must be positive");
  const double value = std::get<General>(impl_).squared_magnitude(omega);
  require(std::isfinite(value) && value >= 0.0, ErrorCode::domain,
          "general coupling returned a negative or non-finite |f|^2 at omega = " +
              std::to_string(omega));
  return value;
}

std::optional<double> CouplingFunction::special_beta() const {
  if (const auto* s = std::get_if<Special>(&impl_)) return s->beta;
  return std::nullopt;
}

// geometry

double norm(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }

namespace {

void require_unit(const Vec3& direction) {
  require(std::abs(norm(direction) - 1.0) <= 1e-12, ErrorCode::domain,
          "direction must be a unit vector");
}

}  // namespace

double polarization_sum_x(const Vec3& direction) {
  require_unit(direction);
  return std::clamp(1.0 - direction[0] * direction[0], 0.0, 1.0);
}

double polarization_x(const Vec3& direction, int lambda) {
  require(lambda == 1 || lambda == 2, ErrorCode::domain, "polarization index must be 1 or 2");
  const double transverse = polarization_sum_x(direction);
  return lambda == 1 ? std::sqrt(transverse) : 0.0;
}

// thermal

double bose_occupation(double omega, double temperature) {
  require(omega > 0.0, ErrorCode::domain, "bose_occupation: omega must be positive");
  require(temperature >= 0.0, ErrorCode::domain,
          "bose_occupation: temperature must be non-negative");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega / temperature);
}

double stimulated_factor(double omega, double temperature) {
  return 1.0 + bose_occupation(omega, temperature);
}

// bath occupations

void FieldQuantum::validate() const {
  require_unit(direction);
  require(omega_p > 0.0, ErrorCode::domain, "photon frequency must be positive");
  require(polarization == 1 || polarization == 2, ErrorCode::domain,
          "photon polarization must be 1 or 2");
}

void ReservoirQuantum::validate() const {
  require(omega_p > 0.0, ErrorCode::domain, "reservoir quantum frequency must be positive");
}

namespace {

template <typename Quantum>
void validate_occupation(const BathOccupation<Quantum>& occupation) {
  if (const auto* fock = std::get_if<Fock<Quantum>>(&occupation)) {
    require(!fock->quanta.empty(), ErrorCode::domain, "Fock occupation must list quanta");
    for (const auto& q : fock->quanta) q.validate();
  } else if (const auto* thermal = std::get_if<Thermal>(&occupation)) {
    require(std::isfinite(thermal->temperature) && thermal->temperature >= 0.0,
            ErrorCode::domain, "thermal temperature must be non-negative");
  }
}

}  // namespace

void validate(const FieldOccupation& occupation) { validate_occupation(occupation); }
void validate(const ReservoirOccupation& occupation) { validate_occupation(occupation); }

}  // namespace dqo
