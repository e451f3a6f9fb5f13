#pragma once

#include <array>

namespace dqo {

using Vec3 = std::array<double, 3>;

double norm(const Vec3& v);

// Sum over both transverse polarizations of eps_x^2 for a photon
// travelling along `direction`: 1 - direction_x^2.
double polarization_sum_x(const Vec3& direction);

// x-component of the polarization vector `lambda` (1 or 2).
//
// Basis convention: lambda = 1 lies in the plane spanned by the direction
// and x-hat, so it carries the whole x-projection; lambda = 2 is
// perpendicular to x-hat. For a photon along x-hat both components vanish.
double polarization_x(const Vec3& direction, int lambda);

}  // namespace dqo
