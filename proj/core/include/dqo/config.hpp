#pragma once

#include <filesystem>
#include <numbers>
#include <string>
#include <string_view>

namespace dqo {

// Model constants in natural units (hbar = c = k_B = 1).
struct PhysicalConfig {
  double m = 1.0;            // oscillator mass
  double omega = 1.0;        // oscillator angular frequency
  double e = 0.0;            // charge
  double beta = 0.0;         // friction coefficient (mass / time)
  double temperature = 0.0;  // energy units
  double cutoff = 100.0;     // UV cutoff of the memory-kernel quadrature

  // Radiation-reaction time e^2 / (6 pi m); derived, never stored.
  double tau() const { return e * e / (6.0 * std::numbers::pi * m); }

  // Markovian friction rate beta / m.
  double friction_rate() const { return beta / m; }

  // Throws Error{domain} when an invariant is violated.
  void validate() const;
};

// Accepts either the keys at top level or nested under "physical".
// Missing `e` and `beta` default to 0; m, omega, temperature and cutoff
// fall back to the defaults above.
PhysicalConfig parse_physical_config(std::string_view json_text);
PhysicalConfig load_physical_config(const std::filesystem::path& path);

std::string to_json(const PhysicalConfig& config);

}  // namespace dqo
