#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "bath_io.hpp"
#include "dqo/config.hpp"
#include "dqo/dynamics.hpp"
#include "dqo/error.hpp"
#include "dqo/exchange.hpp"
#include "dqo/kernel.hpp"
#include "dqo/oracle.hpp"
#include "dqo/rates.hpp"
#include "json.hpp"

namespace dqo::cli {

namespace {

using nlohmann::json;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class Format { csv, json };

struct Columns {
  std::vector<std::string> names;
  std::vector<std::vector<double>> data;
};

void write_csv(std::ostream& os, const Columns& cols) {
  for (std::size_t c = 0; c < cols.names.size(); ++c) os << (c ? "," : "") << cols.names[c];
  os << '\n';
  const std::size_t rows = cols.data.empty() ? 0 : cols.data.front().size();
  os << std::setprecision(17);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols.data.size(); ++c) os << (c ? "," : "") << cols.data[c][r];
    os << '\n';
  }
}

json columns_json(const Columns& cols) {
  json j = json::object();
  for (std::size_t c = 0; c < cols.names.size(); ++c) j[cols.names[c]] = cols.data[c];
  return j;
}

json physical_json(const PhysicalConfig& p) {
  return {{"m", p.m},       {"omega", p.omega},
          {"e", p.e},       {"beta", p.beta},
          {"temperature", p.temperature}, {"cutoff", p.cutoff}};
}

json rate_json(const SpectralRate& rate) {
  json res = json::array();
  for (const auto& r : rate.resonances) res.push_back({{"location", r.location}, {"weight", r.weight}});
  return {{"smooth", rate.smooth}, {"resonances", res}};
}

std::vector<double> parse_numbers(const std::string& text, std::size_t expected,
                                  const std::string& flag) {
  std::istringstream in(text);
  std::vector<double> out;
  for (double v; in >> v;) out.push_back(v);
  if (!in.eof() || out.size() != expected) {
    fail(ErrorCode::config, flag + " expects " + std::to_string(expected) + " numbers");
  }
  return out;
}

// Command-specific values: an explicit flag wins over the config block,
// which wins over the built-in default.
struct Settings {
  const json* block = nullptr;

  template <typename T>
  void fill(const CLI::Option* opt, const char* key, T& target) const {
    if (opt->count() > 0 || block == nullptr || !block->contains(key)) return;
    try {
      target = block->at(key).get<T>();
    } catch (const json::exception&) {
      fail(ErrorCode::config, std::string("config key '") + key + "' has the wrong type");
    }
  }

  // As fill, with a computed default when neither source sets the value.
  template <typename T>
  void fill_or(const CLI::Option* opt, const char* key, T& target, T fallback) const {
    if (!has(opt, key)) target = fallback;
    fill(opt, key, target);
  }

  bool has(const CLI::Option* opt, const char* key) const {
    return opt->count() > 0 || (block != nullptr && block->contains(key));
  }
};

struct Context {
  PhysicalConfig physical;
  Format format = Format::csv;
  bool format_given = false;
  std::ostream* out = nullptr;
};

Format effective(const Context& ctx, Format fallback) {
  return ctx.format_given ? ctx.format : fallback;
}

// ---- kernel -------------------------------------------------------------

struct KernelArgs {
  double t_end = 0.0;
  double step = 0.0;
  int quadrature_points = MemoryKernel::kMinQuadraturePoints;
  CLI::Option* t_end_opt = nullptr;
  CLI::Option* step_opt = nullptr;
  CLI::Option* points_opt = nullptr;
};

void run_kernel(const Context& ctx, KernelArgs args, const Settings& s) {
  const PhysicalConfig& p = ctx.physical;
  s.fill_or(args.t_end_opt, "t-end", args.t_end, 10.0 * kTwoPi / p.omega);
  s.fill_or(args.step_opt, "step", args.step, 0.25 / p.cutoff);
  s.fill(args.points_opt, "quadrature-points", args.quadrature_points);
  require(args.step > 0.0 && args.t_end > args.step, ErrorCode::domain,
          "kernel: need 0 < step < t-end");

  const MemoryKernel kernel(CouplingFunction::special(p.beta), p.m, p.cutoff,
                            args.quadrature_points);
  Trajectory probe;
  probe.h = args.step;
  const auto count = static_cast<std::size_t>(std::llround(args.t_end / args.step)) + 1;
  for (std::size_t k = 0; k < count; ++k) {
    const double t = probe.time(k);
    probe.q.push_back(std::sin(p.omega * t) / p.omega);
    probe.qdot.push_back(std::cos(p.omega * t));
  }
  const std::vector<double> gamma = kernel.sample(probe.h, count);
  const std::vector<double> drag = convolve_memory(kernel, probe);

  Columns cols{{"t", "gamma", "convolution", "markov_target", "residual"}, {}};
  cols.data.resize(5);
  for (std::size_t k = 0; k < count; ++k) {
    const double target = p.friction_rate() * probe.qdot[k];
    cols.data[0].push_back(probe.time(k));
    cols.data[1].push_back(gamma[k]);
    cols.data[2].push_back(drag[k]);
    cols.data[3].push_back(target);
    cols.data[4].push_back(drag[k] - target);
  }
  if (effective(ctx, Format::csv) == Format::csv) {
    write_csv(*ctx.out, cols);
    return;
  }
  json j = columns_json(cols);
  j["physical"] = physical_json(p);
  j["markov_residual"] = markov_residual(kernel, probe, p.beta);
  *ctx.out << j.dump() << '\n';
}

// ---- trajectory ---------------------------------------------------------

struct TrajectoryArgs {
  std::string solver = "markov";
  double q0 = 1.0;
  double v0 = 0.0;
  double t_end = 0.0;
  double step = 0.0;
  CLI::Option *solver_opt = nullptr, *q0_opt = nullptr, *v0_opt = nullptr;
  CLI::Option *t_end_opt = nullptr, *step_opt = nullptr;
};

void run_trajectory(const Context& ctx, TrajectoryArgs args, const Settings& s) {
  const PhysicalConfig& p = ctx.physical;
  s.fill(args.solver_opt, "solver", args.solver);
  s.fill(args.q0_opt, "q0", args.q0);
  s.fill(args.v0_opt, "v0", args.v0);
  double default_step = 0.05 / std::max(p.omega, p.friction_rate());
  if (args.solver == "nonmarkov") default_step = std::min(default_step, 0.25 / p.cutoff);
  s.fill_or(args.t_end_opt, "t-end", args.t_end, 10.0 * kTwoPi / p.omega);
  s.fill_or(args.step_opt, "step", args.step, default_step);

  Trajectory traj;
  if (args.solver == "markov") {
    traj = solve_markovian(p, args.q0, args.v0, args.t_end, args.step);
  } else if (args.solver == "nonmarkov") {
    const MemoryKernel kernel(CouplingFunction::special(p.beta), p.m, p.cutoff);
    traj = solve_nonmarkovian(p, kernel, args.q0, args.v0, args.t_end, args.step);
  } else if (args.solver == "rr") {
    traj = solve_with_radiation_reaction(p, args.q0, args.v0, args.t_end, args.step);
  } else {
    fail(ErrorCode::config, "unknown solver '" + args.solver + "'");
  }

  Columns cols{{"t", "q", "qdot", "energy"}, {{}, traj.q, traj.qdot, energy(p, traj)}};
  for (std::size_t k = 0; k < traj.size(); ++k) cols.data[0].push_back(traj.time(k));
  if (effective(ctx, Format::csv) == Format::csv) {
    write_csv(*ctx.out, cols);
    return;
  }
  json j = columns_json(cols);
  j["physical"] = physical_json(p);
  j["solver"] = args.solver;
  *ctx.out << j.dump() << '\n';
}

// ---- rates / exchange ---------------------------------------------------

struct EvaluationArgs {
  double t = 0.0;
  double eta = 0.0;
  std::string kernel = "boxcar";
  CLI::Option *t_opt = nullptr, *eta_opt = nullptr, *kernel_opt = nullptr;

  void add(CLI::App* cmd) {
    t_opt = cmd->add_option("--t", t, "Evaluate the probability at time t");
    eta_opt = cmd->add_option("--eta", eta, "Broadening width for resonances");
    kernel_opt = cmd->add_option("--kernel", kernel, "Broadening kernel")
                     ->check(CLI::IsMember({"boxcar", "lorentzian"}));
  }

  void maybe_evaluate(const Settings& s, const SpectralRate& rate, double reference, json& j) {
    s.fill(kernel_opt, "kernel", kernel);
    if (!(s.has(t_opt, "t") && s.has(eta_opt, "eta"))) return;
    s.fill(t_opt, "t", t);
    s.fill(eta_opt, "eta", eta);
    const auto shape = kernel == "lorentzian" ? BroadeningKernel::lorentzian : BroadeningKernel::boxcar;
    const Probability prob = evaluate_spectral_rate(rate, t, eta, shape, reference);
    j["probability"] = {{"t", t},          {"eta", eta},
                        {"kernel", kernel}, {"value", prob.value},
                        {"raw", prob.raw},  {"perturbative", prob.perturbative}};
  }
};

struct RatesArgs {
  int n = 1;
  std::string direction = "down";
  std::string field = "vacuum";
  std::string reservoir = "vacuum";
  EvaluationArgs evaluation;
  CLI::Option *n_opt = nullptr, *direction_opt = nullptr, *field_opt = nullptr,
              *reservoir_opt = nullptr;
};

void run_rates(const Context& ctx, RatesArgs args, const Settings& s) {
  const PhysicalConfig& p = ctx.physical;
  s.fill(args.n_opt, "n", args.n);
  s.fill(args.direction_opt, "direction", args.direction);
  s.fill(args.field_opt, "field", args.field);
  s.fill(args.reservoir_opt, "reservoir", args.reservoir);
  require(args.direction == "down" || args.direction == "up", ErrorCode::config,
          "direction must be down or up");
  const auto direction =
      args.direction == "down" ? TransitionDirection::down : TransitionDirection::up;

  const SpectralRate rate =
      transition_rate(args.n, direction, parse_field_occupation(args.field),
                      parse_reservoir_occupation(args.reservoir), p);
  json j = rate_json(rate);
  j["n"] = args.n;
  j["direction"] = args.direction;
  j["field"] = args.field;
  j["reservoir"] = args.reservoir;
  j["physical"] = physical_json(p);
  args.evaluation.maybe_evaluate(s, rate, p.omega, j);
  *ctx.out << j.dump() << '\n';
}

struct ExchangeArgs {
  std::string mode = "absorb";
  std::string photon = "0 0 1 1 1";
  std::string reservoir = "vacuum";
  EvaluationArgs evaluation;
  CLI::Option *mode_opt = nullptr, *photon_opt = nullptr, *reservoir_opt = nullptr;
};

void run_exchange(const Context& ctx, ExchangeArgs args, const Settings& s) {
  const PhysicalConfig& p = ctx.physical;
  s.fill(args.mode_opt, "mode", args.mode);
  s.fill(args.photon_opt, "photon", args.photon);
  s.fill(args.reservoir_opt, "reservoir", args.reservoir);
  const FieldQuantum photon = parse_photon(args.photon);
  const ReservoirOccupation reservoir = parse_reservoir_occupation(args.reservoir);
  const CouplingFunction coupling = CouplingFunction::special(p.beta);

  SpectralRate rate;
  if (args.mode == "absorb") {
    rate = photon_absorption_rate(photon, reservoir, coupling, p);
  } else if (args.mode == "emit") {
    rate = photon_emission_rate(photon, reservoir, coupling, p);
  } else {
    fail(ErrorCode::config, "mode must be absorb or emit");
  }
  json j = rate_json(rate);
  j["mode"] = args.mode;
  j["photon"] = args.photon;
  j["reservoir"] = args.reservoir;
  j["physical"] = physical_json(p);
  args.evaluation.maybe_evaluate(s, rate, photon.omega_p, j);
  *ctx.out << j.dump() << '\n';
}

// ---- oracle -------------------------------------------------------------

struct OracleArgs {
  std::string bath = "reservoir";
  int n = 1;
  int modes = 400;
  std::string band = "0.2 5";
  std::string t_grid;
  bool cascade = false;
  std::string summary_path;
  CLI::Option *bath_opt = nullptr, *n_opt = nullptr, *modes_opt = nullptr, *band_opt = nullptr,
              *t_grid_opt = nullptr, *cascade_opt = nullptr;
};

void run_oracle(const Context& ctx, OracleArgs args, const Settings& s) {
  const PhysicalConfig& p = ctx.physical;
  s.fill(args.bath_opt, "bath", args.bath);
  s.fill(args.n_opt, "n", args.n);
  s.fill(args.modes_opt, "modes", args.modes);
  s.fill(args.band_opt, "band", args.band);
  s.fill(args.t_grid_opt, "t-grid", args.t_grid);
  s.fill(args.cascade_opt, "cascade", args.cascade);

  const bool use_reservoir = args.bath == "reservoir" || args.bath == "both";
  const bool use_field = args.bath == "field" || args.bath == "both";
  require(use_reservoir || use_field, ErrorCode::config, "bath must be reservoir, field or both");

  const auto band = parse_numbers(args.band, 2, "--band");
  const double lo = band[0] * p.omega;
  const double hi = band[1] * p.omega;
  const CouplingFunction coupling = CouplingFunction::special(p.beta);
  std::vector<ModeGrid> grids;
  if (use_reservoir) grids.push_back(discretize(BathKind::reservoir, coupling, p, lo, hi, args.modes));
  if (use_field) grids.push_back(discretize(BathKind::field, coupling, p, lo, hi, args.modes));
  const double spacing = grids.front().spacing;

  // Analytic first-step slope restricted to the simulated baths.
  PhysicalConfig analytic_config = p;
  if (!use_reservoir) analytic_config.beta = 0.0;
  if (!use_field) analytic_config.e = 0.0;
  const double analytic =
      transition_rate(args.n, TransitionDirection::down, Vacuum{}, Vacuum{}, analytic_config).smooth;

  double t_lo = 10.0 / (hi - lo);
  double t_hi = 0.25 * kTwoPi / spacing;
  if (analytic > 0.0) t_hi = std::min(t_hi, 0.05 / analytic);
  int steps = 200;
  if (!args.t_grid.empty()) {
    const auto g = parse_numbers(args.t_grid, 3, "--t-grid");
    t_lo = g[0];
    t_hi = g[1];
    steps = static_cast<int>(g[2]);
  }
  require(steps >= 2 && t_hi > t_lo && t_lo >= 0.0, ErrorCode::config,
          "--t-grid needs 0 <= t_lo < t_hi and at least 2 steps");
  std::vector<double> times(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) times[i] = t_lo + (t_hi - t_lo) * i / (steps - 1);

  SectorOptions options;
  options.full_cascade = args.cascade;
  const SectorModel model = build_sector(args.n, std::move(grids), p, options);
  const SurvivalResult result = evolve_survival(model, times);
  const double slope = fitted_rate(result.times, result.p_transfer, {t_lo, t_hi}, hi - lo);

  json summary = {{"fitted_slope", slope},
                  {"analytic_slope", analytic},
                  {"ratio", analytic > 0.0 ? slope / analytic : 0.0},
                  {"bath", args.bath},
                  {"n", args.n},
                  {"modes", args.modes},
                  {"dimension", model.dimension()},
                  {"band", {lo, hi}},
                  {"window", {t_lo, t_hi}},
                  {"max_norm_error", 0.0},
                  {"physical", physical_json(p)}};
  double norm_error = 0.0;
  for (double nrm : result.norm) norm_error = std::max(norm_error, std::abs(nrm - 1.0));
  summary["max_norm_error"] = norm_error;

  if (!args.summary_path.empty()) {
    std::ofstream f(args.summary_path);
    if (!f) fail(ErrorCode::config, "cannot write summary " + args.summary_path);
    f << summary.dump() << '\n';
  }
  if (effective(ctx, Format::csv) == Format::json) {
    *ctx.out << summary.dump() << '\n';
    return;
  }
  write_csv(*ctx.out, {{"t", "P_stay", "P_transfer"}, {result.times, result.p_stay, result.p_transfer}});
}

// ---- driver -------------------------------------------------------------

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::config, "cannot open config file " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& ex) {
    fail(ErrorCode::config, std::string("invalid JSON in ") + path + ": " + ex.what());
  }
}

int report(std::ostream& err, std::string_view code, const std::string& message, int status) {
  std::string line = message;
  std::replace(line.begin(), line.end(), '\n', ' ');
  err << "ERROR " << code << ": " << line << '\n';
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Damped quantum oscillator: memory-kernel dynamics, radiation reaction, "
               "golden-rule rates and an exact-diagonalization oracle"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "csv";
  std::optional<double> m, omega, e, beta, temperature, cutoff;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_path, "Write output to this file instead of stdout");
  auto* format_opt = app.add_option("--format", format, "csv or json")
                         ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--m", m, "Oscillator mass");
  app.add_option("--omega", omega, "Oscillator frequency");
  app.add_option("--e", e, "Charge");
  app.add_option("--beta", beta, "Friction coefficient");
  app.add_option("--temperature", temperature, "Temperature");
  app.add_option("--cutoff", cutoff, "Kernel UV cutoff");

  KernelArgs kernel;
  auto* kernel_cmd = app.add_subcommand("kernel", "Memory kernel and its Markovian limit (CSV)");
  kernel.t_end_opt = kernel_cmd->add_option("--t-end", kernel.t_end, "Probe duration");
  kernel.step_opt = kernel_cmd->add_option("--step", kernel.step, "Time step");
  kernel.points_opt = kernel_cmd->add_option("--quadrature-points", kernel.quadrature_points,
                                             "Minimum quadrature nodes");

  TrajectoryArgs traj;
  auto* traj_cmd = app.add_subcommand("trajectory", "Integrate the oscillator (CSV)");
  traj.solver_opt = traj_cmd->add_option("--solver", traj.solver, "markov, nonmarkov or rr")
                        ->check(CLI::IsMember({"markov", "nonmarkov", "rr"}));
  traj.q0_opt = traj_cmd->add_option("--q0", traj.q0, "Initial position");
  traj.v0_opt = traj_cmd->add_option("--v0", traj.v0, "Initial velocity");
  traj.t_end_opt = traj_cmd->add_option("--t-end", traj.t_end, "End time");
  traj.step_opt = traj_cmd->add_option("--step", traj.step, "Time step");

  RatesArgs rates;
  auto* rates_cmd = app.add_subcommand("rates", "First-order transition rates (JSON)");
  rates.n_opt = rates_cmd->add_option("--n", rates.n, "Oscillator occupation");
  rates.direction_opt = rates_cmd->add_option("--direction", rates.direction, "down or up")
                            ->check(CLI::IsMember({"down", "up"}));
  rates.field_opt = rates_cmd->add_option("--field", rates.field, "vacuum | thermal:T | fock:<file>");
  rates.reservoir_opt =
      rates_cmd->add_option("--reservoir", rates.reservoir, "vacuum | thermal:T | fock:<file>");
  rates.evaluation.add(rates_cmd);

  ExchangeArgs exchange;
  auto* exchange_cmd = app.add_subcommand("exchange", "Photon-reservoir exchange rates (JSON)");
  exchange.mode_opt = exchange_cmd->add_option("--mode", exchange.mode, "absorb or emit")
                          ->check(CLI::IsMember({"absorb", "emit"}));
  exchange.photon_opt =
      exchange_cmd->add_option("--photon", exchange.photon, "\"dx dy dz lambda omega\"");
  exchange.reservoir_opt =
      exchange_cmd->add_option("--reservoir", exchange.reservoir, "vacuum | thermal:T | fock:<file>");
  exchange.evaluation.add(exchange_cmd);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact-diagonalization rate check");
  oracle.bath_opt = oracle_cmd->add_option("--bath", oracle.bath, "reservoir, field or both")
                        ->check(CLI::IsMember({"reservoir", "field", "both"}));
  oracle.n_opt = oracle_cmd->add_option("--n", oracle.n, "Initial oscillator occupation");
  oracle.modes_opt = oracle_cmd->add_option("--modes", oracle.modes, "Modes per bath");
  oracle.band_opt = oracle_cmd->add_option("--band", oracle.band, "\"lo hi\" in units of omega");
  oracle.t_grid_opt = oracle_cmd->add_option("--t-grid", oracle.t_grid, "\"t_lo t_hi steps\"");
  oracle.cascade_opt = oracle_cmd->add_flag("--cascade", oracle.cascade, "Full cascade sector");
  oracle_cmd->add_option("--summary", oracle.summary_path, "Also write the JSON summary here");

  for (auto* cmd : app.get_subcommands({})) cmd->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    return report(err, "usage", ex.what(), kExitValidation);
  }

  try {
    json doc = json::object();
    Context ctx;
    if (!config_path.empty()) {
      doc = load_json_file(config_path);
      ctx.physical = parse_physical_config(doc.dump());
    }
    if (m) ctx.physical.m = *m;
    if (omega) ctx.physical.omega = *omega;
    if (e) ctx.physical.e = *e;
    if (beta) ctx.physical.beta = *beta;
    if (temperature) ctx.physical.temperature = *temperature;
    if (cutoff) ctx.physical.cutoff = *cutoff;
    ctx.physical.validate();
    ctx.format = format == "json" ? Format::json : Format::csv;
    ctx.format_given = format_opt->count() > 0 || doc.contains("format");
    if (doc.contains("format") && format_opt->count() == 0) {
      ctx.format = doc.at("format").get<std::string>() == "json" ? Format::json : Format::csv;
    }
    if (out_path.empty() && doc.contains("output_path")) out_path = doc.at("output_path").get<std::string>();

    std::ofstream file;
    ctx.out = &out;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) fail(ErrorCode::config, "cannot open output file " + out_path);
      ctx.out = &file;
    }

    const CLI::App* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    Settings settings;
    if (doc.contains(name) && doc.at(name).is_object()) settings.block = &doc.at(name);

    if (name == "kernel") run_kernel(ctx, kernel, settings);
    else if (name == "trajectory") run_trajectory(ctx, traj, settings);
    else if (name == "rates") run_rates(ctx, rates, settings);
    else if (name == "exchange") run_exchange(ctx, exchange, settings);
    else if (name == "oracle") run_oracle(ctx, oracle, settings);
    return kExitOk;
  } catch (const Error& ex) {
    const int status = ex.code() == ErrorCode::numerical ? kExitNumerical : kExitValidation;
    return report(err, to_string(ex.code()), ex.what(), status);
  } catch (const json::exception& ex) {
    return report(err, "config", ex.what(), kExitValidation);
  }
}

}  // namespace dqo::cli
