#pragma once

#include <variant>
#include <vector>

#include "dqo/geometry.hpp"

namespace dqo {

// A photon of the vacuum field.
struct FieldQuantum {
  Vec3 direction{0.0, 0.0, 1.0};
  double omega_p = 1.0;
  int polarization = 1;

  double epsilon_x() const { return polarization_x(direction, polarization); }
  double epsilon_x_squared() const {
    const double ex = epsilon_x();
    return ex * ex;
  }
  void validate() const;
};

// A quantum of the Klein-Gordon reservoir.
struct ReservoirQuantum {
  double omega_p = 1.0;

  void validate() const;
};

struct Vacuum {};

template <typename Quantum>
struct Fock {
  std::vector<Quantum> quanta;
};

struct Thermal {
  double temperature = 0.0;  // 0 behaves as Vacuum
};

template <typename Quantum>
using BathOccupation = std::variant<Vacuum, Fock<Quantum>, Thermal>;

using FieldOccupation = BathOccupation<FieldQuantum>;
using ReservoirOccupation = BathOccupation<ReservoirQuantum>;

// Throws Error{domain} for an empty Fock list, a negative temperature or an
// invalid quantum.
void validate(const FieldOccupation& occupation);
void validate(const ReservoirOccupation& occupation);

}  // namespace dqo
