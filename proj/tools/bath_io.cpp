#include "bath_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "dqo/error.hpp"

namespace dqo::cli {

namespace {

double to_double(std::string_view token, std::string_view what) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    fail(ErrorCode::config, "cannot parse " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string> tokens(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

FieldQuantum photon_from_tokens(const std::vector<std::string>& t, std::string_view where) {
  if (t.size() != 5) {
    fail(ErrorCode::config,
         std::string(where) + ": expected 'dir_x dir_y dir_z lambda omega_p'");
  }
  FieldQuantum photon;
  photon.direction = {to_double(t[0], "dir_x"), to_double(t[1], "dir_y"), to_double(t[2], "dir_z")};
  const double lambda = to_double(t[3], "lambda");
  if (lambda != 1.0 && lambda != 2.0) fail(ErrorCode::config, "polarization must be 1 or 2");
  photon.polarization = static_cast<int>(lambda);
  photon.omega_p = to_double(t[4], "omega_p");
  photon.validate();
  return photon;
}

template <typename Quantum, typename Parse>
std::vector<Quantum> read_lines(std::istream& in, Parse parse) {
  std::vector<Quantum> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto t = tokens(line);
    if (t.empty() || t.front().starts_with('#')) continue;
    out.push_back(parse(t, "line " + std::to_string(number)));
  }
  return out;
}

std::ifstream open(std::string_view path) {
  std::ifstream in{std::string(path)};
  if (!in) fail(ErrorCode::config, "cannot open Fock file " + std::string(path));
  return in;
}

template <typename Quantum, typename ReadFile>
BathOccupation<Quantum> parse_occupation(std::string_view text, ReadFile read_file) {
  if (text == "vacuum") return Vacuum{};
  if (text.starts_with("thermal:")) {
    const double t = to_double(text.substr(8), "temperature");
    if (!(t >= 0.0)) fail(ErrorCode::domain, "temperature must be non-negative");
    return Thermal{t};
  }
  if (text.starts_with("fock:")) {
    auto in = open(text.substr(5));
    Fock<Quantum> fock{read_file(in)};
    if (fock.quanta.empty()) fail(ErrorCode::config, "Fock file lists no quanta");
    return fock;
  }
  fail(ErrorCode::config, "bath must be vacuum, thermal:<T> or fock:<file>, got '" +
                              std::string(text) + "'");
}

}  // namespace

std::vector<ReservoirQuantum> read_reservoir_quanta(std::istream& in) {
  return read_lines<ReservoirQuantum>(in, [](const std::vector<std::string>& t,
                                             const std::string& where) {
    if (t.size() != 1) fail(ErrorCode::config, where + ": expected 'omega_p'");
    ReservoirQuantum q{to_double(t[0], "omega_p")};
    q.validate();
    return q;
  });
}

std::vector<FieldQuantum> read_field_quanta(std::istream& in) {
  return read_lines<FieldQuantum>(in, [](const std::vector<std::string>& t,
                                         const std::string& where) {
    return photon_from_tokens(t, where);
  });
}

FieldQuantum parse_photon(std::string_view text) { return photon_from_tokens(tokens(text), "--photon"); }

FieldOccupation parse_field_occupation(std::string_view text) {
  return parse_occupation<FieldQuantum>(text, [](std::istream& in) { return read_field_quanta(in); });
}

ReservoirOccupation parse_reservoir_occupation(std::string_view text) {
  return parse_occupation<ReservoirQuantum>(
      text, [](std::istream& in) { return read_reservoir_quanta(in); });
}

}  // namespace dqo::cli
