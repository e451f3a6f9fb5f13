#pragma once

#include <filesystem>
#include <istream>
#include <string_view>
#include <vector>

#include "dqo/bath.hpp"

namespace dqo::cli {

// Line-oriented Fock files. Blank lines and lines starting with '#' are
// skipped.
//   reservoir: omega_p
//   field:     dir_x dir_y dir_z lambda omega_p
std::vector<ReservoirQuantum> read_reservoir_quanta(std::istream& in);
std::vector<FieldQuantum> read_field_quanta(std::istream& in);

// "dx dy dz lambda omega"
FieldQuantum parse_photon(std::string_view text);

// "vacuum" | "thermal:<T>" | "fock:<path>"
FieldOccupation parse_field_occupation(std::string_view text);
ReservoirOccupation parse_reservoir_occupation(std::string_view text);

}  // namespace dqo::cli
