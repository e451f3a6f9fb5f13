#include "dqo/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dqo/error.hpp"
#include "json.hpp"

namespace dqo {

namespace {

double read_number(const nlohmann::json& j, const char* key, double fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number()) {
    fail(ErrorCode::config, std::string("config key '") + key + "' must be a number");
  }
  return it->get<double>();
}

}  // namespace

void PhysicalConfig::validate() const {
  auto finite = [](double x) { return std::isfinite(x); };
  require(finite(m) && m > 0.0, ErrorCode::domain, "m must be positive");
  require(finite(omega) && omega > 0.0, ErrorCode::domain, "omega must be positive");
  require(finite(e), ErrorCode::domain, "e must be finite");
  require(finite(beta) && beta >= 0.0, ErrorCode::domain, "beta must be non-negative");
  require(finite(temperature) && temperature >= 0.0, ErrorCode::domain,
          "temperature must be non-negative");
  require(finite(cutoff) && cutoff > omega, ErrorCode::domain, "cutoff must exceed omega");
}

PhysicalConfig parse_physical_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& ex) {
    fail(ErrorCode::config, std::string("invalid JSON: ") + ex.what());
  }
  if (!doc.is_object()) fail(ErrorCode::config, "config root must be an object");
  const nlohmann::json& block =
      doc.contains("physical") && doc["physical"].is_object() ? doc["physical"] : doc;

  PhysicalConfig config;
  config.m = read_number(block, "m", config.m);
  config.omega = read_number(block, "omega", config.omega);
  config.e = read_number(block, "e", 0.0);
  config.beta = read_number(block, "beta", 0.0);
  config.temperature = read_number(block, "temperature", config.temperature);
  config.cutoff = read_number(block, "cutoff", config.cutoff);
  config.validate();
  return config;
}

PhysicalConfig load_physical_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::config, "cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_physical_config(buffer.str());
}

std::string to_json(const PhysicalConfig& config) {
  nlohmann::json j = {{"m", config.m},
                      {"omega", config.omega},
                      {"e", config.e},
                      {"beta", config.beta},
                      {"temperature", config.temperature},
                      {"cutoff", config.cutoff}};
  return j.dump();
}

}  // namespace dqo
