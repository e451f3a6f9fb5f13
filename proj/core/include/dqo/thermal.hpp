#pragma once

namespace dqo {

// Mean Bose occupation 1 / (e^{omega/T} - 1); exactly 0 at T = 0.
double bose_occupation(double omega, double temperature);

// Stimulated-emission factor 1 + nbar = e^{omega/T} / (e^{omega/T} - 1);
// exactly 1 at T = 0.
double stimulated_factor(double omega, double temperature);

}  // namespace dqo
