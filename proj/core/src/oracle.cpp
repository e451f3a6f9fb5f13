#include "dqo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include "dqo/error.hpp"
#include "dqo/thermal.hpp"
#include "fit.hpp"

namespace dqo {

namespace {

constexpr double kPi = std::numbers::pi;

// sum over lambda and solid angle of eps_x^2
constexpr double kPolarizationSolidAngle = 8.0 * kPi / 3.0;

double combinations_with_repetition(std::size_t modes, int quanta) {
  double c = 1.0;
  for (int i = 1; i <= quanta; ++i) {
    c *= static_cast<double>(modes + static_cast<std::size_t>(i) - 1) / i;
  }
  return c;
}

void enumerate_multisets(int modes, int quanta, int first, std::vector<int>& current,
                         std::vector<std::vector<int>>& out) {
  if (static_cast<int>(current.size()) == quanta) {
    out.push_back(current);
    return;
  }
  for (int j = first; j < modes; ++j) {
    current.push_back(j);
    enumerate_multisets(modes, quanta, j, current, out);
    current.pop_back();
  }
}

int count_of(const std::vector<int>& quanta, int mode) {
  const auto [lo, hi] = std::equal_range(quanta.begin(), quanta.end(), mode);
  return static_cast<int>(hi - lo);
}

std::vector<int> without_one(const std::vector<int>& quanta, int mode) {
  std::vector<int> out = quanta;
  out.erase(std::lower_bound(out.begin(), out.end(), mode));
  return out;
}

std::vector<int> with_one(const std::vector<int>& quanta, int mode) {
  std::vector<int> out = quanta;
  out.insert(std::upper_bound(out.begin(), out.end(), mode), mode);
  return out;
}

struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Spectrum diagonalize(const Eigen::MatrixXd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    fail(ErrorCode::numerical, "sector diagonalization failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// Probabilities |<i| e^{-iHt} |initial>|^2 for every basis state i.
class ExactPropagator {
 public:
  ExactPropagator(const Eigen::MatrixXd& h, Eigen::Index initial)
      : spectrum_(diagonalize(h)), overlap_(spectrum_.vectors.row(initial).transpose()) {}

  Eigen::VectorXd probabilities(double t) const {
    const Eigen::ArrayXd phase = spectrum_.values.array() * t;
    const Eigen::VectorXd re = spectrum_.vectors * (overlap_.array() * phase.cos()).matrix();
    const Eigen::VectorXd im = spectrum_.vectors * (overlap_.array() * phase.sin()).matrix();
    return (re.array().square() + im.array().square()).matrix();
  }

 private:
  Spectrum spectrum_;
  Eigen::VectorXd overlap_;
};

}  // namespace

double spectral_density(BathKind kind, const CouplingFunction& coupling,
                        const PhysicalConfig& config, double nu) {
  require(nu > 0.0, ErrorCode::domain, "spectral_density: frequency must be positive");
  const double vertex = config.omega / (2.0 * config.m);
  if (kind == BathKind::reservoir) {
    return vertex * coupling(nu) * 4.0 * kPi * nu * nu;
  }
  const double mode_norm = 2.0 * std::pow(2.0 * kPi, 3) * nu;
  return config.e * config.e * vertex * kPolarizationSolidAngle * nu * nu / mode_norm;
}

ModeGrid discretize(BathKind kind, const CouplingFunction& coupling,
                    const PhysicalConfig& config, double band_lo, double band_hi, int modes) {
  config.validate();
  require(modes >= 1, ErrorCode::domain, "discretize: need at least one mode");
  require(band_lo > 0.0 && band_lo < config.omega && config.omega < band_hi,
          ErrorCode::precondition, "discretize: band must satisfy 0 < lo < omega < hi");

  ModeGrid grid;
  grid.kind = kind;
  grid.spacing = (band_hi - band_lo) / modes;
  grid.omegas.resize(static_cast<std::size_t>(modes));
  grid.couplings.resize(static_cast<std::size_t>(modes));
  for (int j = 0; j < modes; ++j) {
    const double nu = band_lo + (j + 0.5) * grid.spacing;
    grid.omegas[j] = nu;
    grid.couplings[j] = std::sqrt(spectral_density(kind, coupling, config, nu) * grid.spacing);
  }
  return grid;
}

std::size_t SectorModel::mode_count() const {
  std::size_t count = 0;
  for (const auto& g : grids) count += g.size();
  return count;
}

SectorModel build_sector(int n_initial, std::vector<ModeGrid> grids, const PhysicalConfig& config,
                         const SectorOptions& options) {
  config.validate();
  require(n_initial >= 1, ErrorCode::domain, "build_sector: n_initial must be at least 1");
  require(!grids.empty(), ErrorCode::domain, "build_sector: need at least one bath grid");

  SectorModel model;
  model.n_initial = n_initial;
  model.grids = std::move(grids);

  std::vector<double> nu, g;
  std::vector<BathKind> kind;
  int reservoir_grids = 0, field_grids = 0;
  for (const auto& grid : model.grids) {
    require(grid.omegas.size() == grid.couplings.size() && !grid.omegas.empty(),
            ErrorCode::domain, "build_sector: malformed mode grid");
    (grid.kind == BathKind::reservoir ? reservoir_grids : field_grids) += 1;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      nu.push_back(grid.omegas[j]);
      g.push_back(grid.couplings[j]);
      kind.push_back(grid.kind);
    }
  }
  require(reservoir_grids <= 1 && field_grids <= 1, ErrorCode::domain,
          "build_sector: at most one grid per bath kind");
  const int modes = static_cast<int>(nu.size());
  const int min_level = options.full_cascade ? 0 : n_initial - 1;

  double dimension = 0.0;
  for (int level = n_initial; level >= min_level; --level) {
    dimension += combinations_with_repetition(nu.size(), n_initial - level);
  }
  if (dimension > static_cast<double>(options.max_dimension)) {
    fail(ErrorCode::resource, "build_sector: sector dimension " +
                                  std::to_string(static_cast<long long>(dimension)) +
                                  " exceeds limit " + std::to_string(options.max_dimension));
  }

  std::map<std::pair<int, std::vector<int>>, std::size_t> index;
  for (int level = n_initial; level >= min_level; --level) {
    std::vector<std::vector<int>> sets;
    std::vector<int> scratch;
    enumerate_multisets(modes, n_initial - level, 0, scratch, sets);
    for (auto& quanta : sets) {
      index.emplace(std::make_pair(level, quanta), model.basis.size());
      model.basis.push_back({level, std::move(quanta)});
    }
  }

  const auto dim = static_cast<Eigen::Index>(model.basis.size());
  Eigen::MatrixXd& h = model.hamiltonian;
  h = Eigen::MatrixXd::Zero(dim, dim);

  for (Eigen::Index s = 0; s < dim; ++s) {
    const BasisState& state = model.basis[s];
    double energy = (state.level - n_initial) * config.omega;
    for (int j : state.quanta) energy += nu[j];
    h(s, s) = energy;

    // a^dagger b_j: one quantum returns to the oscillator.
    for (auto it = state.quanta.begin(); it != state.quanta.end();) {
      const int j = *it;
      const int occupancy = count_of(state.quanta, j);
      const auto partner = index.find({state.level + 1, without_one(state.quanta, j)});
      if (partner != index.end()) {
        const double amp = std::sqrt(static_cast<double>(state.level + 1) * occupancy) * g[j];
        h(s, partner->second) = amp;
        h(partner->second, s) = amp;
      }
      it += occupancy;
    }

    // b_j a_k^dagger: reservoir quantum converts into a field quantum.
    if (reservoir_grids == 1 && field_grids == 1) {
      for (auto it = state.quanta.begin(); it != state.quanta.end();) {
        const int j = *it;
        const int occupancy = count_of(state.quanta, j);
        it += occupancy;
        if (kind[j] != BathKind::reservoir) continue;
        const std::vector<int> removed = without_one(state.quanta, j);
        for (int k = 0; k < modes; ++k) {
          if (kind[k] != BathKind::field) continue;
          const std::vector<int> target = with_one(removed, k);
          const auto partner = index.find({state.level, target});
          if (partner == index.end()) continue;
          const double cross = 2.0 * g[j] * g[k] / config.omega;
          const double amp = std::sqrt(static_cast<double>(occupancy) * count_of(target, k)) * cross;
          h(s, partner->second) = amp;
          h(partner->second, s) = amp;
        }
      }
    }
  }
  return model;
}

SurvivalResult evolve_survival(const SectorModel& model, std::span<const double> times) {
  require(model.dimension() >= 1, ErrorCode::domain, "evolve_survival: empty model");
  const ExactPropagator propagator(model.hamiltonian, 0);

  const std::size_t modes = model.mode_count();
  std::vector<std::ptrdiff_t> single(modes, -1);
  for (std::size_t s = 0; s < model.basis.size(); ++s) {
    const BasisState& state = model.basis[s];
    if (state.level == model.n_initial - 1 && state.quanta.size() == 1) {
      single[state.quanta.front()] = static_cast<std::ptrdiff_t>(s);
    }
  }

  SurvivalResult result;
  result.times.assign(times.begin(), times.end());
  for (double t : times) {
    const Eigen::VectorXd p = propagator.probabilities(t);
    double transfer = 0.0;
    for (std::size_t s = 0; s < model.basis.size(); ++s) {
      if (model.basis[s].level < model.n_initial) transfer += p[s];
    }
    std::vector<double> per_mode(modes, 0.0);
    for (std::size_t m = 0; m < modes; ++m) {
      if (single[m] >= 0) per_mode[m] = p[single[m]];
    }
    result.p_stay.push_back(p[0]);
    result.p_transfer.push_back(transfer);
    result.norm.push_back(p.sum());
    result.mode_transfer.push_back(std::move(per_mode));
  }
  return result;
}

double fitted_rate(std::span<const double> times, std::span<const double> transfer,
                   const FitWindow& window, double bandwidth) {
  require(times.size() == transfer.size(), ErrorCode::domain,
          "fitted_rate: times and transfer lengths differ");
  require(bandwidth > 0.0, ErrorCode::domain, "fitted_rate: bandwidth must be positive");
  require(window.t_hi > window.t_lo, ErrorCode::precondition, "fitted_rate: empty window");
  require(window.t_lo >= 10.0 / bandwidth, ErrorCode::precondition,
          "fitted_rate: window violates t_lo >= 10 / bandwidth (sinc transient)");

  std::vector<double> t, p;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < window.t_lo || times[i] > window.t_hi) continue;
    t.push_back(times[i]);
    p.push_back(transfer[i]);
  }
  require(t.size() >= 2, ErrorCode::precondition, "fitted_rate: fewer than two samples in window");
  const double peak = *std::max_element(p.begin(), p.end());
  require(peak <= 0.1, ErrorCode::precondition,
          "fitted_rate: window violates transfer <= 0.1 (depletion), peak " + std::to_string(peak));
  return detail::least_squares_slope(t, p);
}

ThermalMixtureResult evolve_thermal_mixture(int n, std::span<const ThermalBath> baths,
                                            const PhysicalConfig& config,
                                            std::span<const double> times) {
  config.validate();
  require(n >= 1, ErrorCode::domain, "thermal mixture: n must be at least 1");

  ThermalMixtureResult result;
  result.times.assign(times.begin(), times.end());
  result.p_down.assign(times.size(), 0.0);
  result.p_up.assign(times.size(), 0.0);

  for (const ThermalBath& bath : baths) {
    require(bath.temperature >= 0.0, ErrorCode::domain,
            "thermal mixture: temperature must be non-negative");
    for (std::size_t j = 0; j < bath.grid.size(); ++j) {
      const double nu = bath.grid.omegas[j];
      const double g = bath.grid.couplings[j];
      const double nbar = bose_occupation(nu, bath.temperature);
      const int k_max = static_cast<int>(std::ceil(nbar + 5.0 * std::sqrt(nbar)));
      const double ratio = nbar / (1.0 + nbar);
      result.tail_bound = std::max(result.tail_bound, std::pow(ratio, k_max + 1));

      double weight = 1.0 / (1.0 + nbar);
      for (int k = 0; k <= k_max; ++k, weight *= ratio) {
        // States |l, n + k - l>, l = 0 .. n + k; the initial state is l = n.
        const int total = n + k;
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(total + 1, total + 1);
        for (int l = 0; l <= total; ++l) {
          h(l, l) = (l - n) * config.omega + (total - l - k) * nu;
          if (l > 0) {
            const double amp = std::sqrt(static_cast<double>(l) * (total - l + 1)) * g;
            h(l, l - 1) = amp;
            h(l - 1, l) = amp;
          }
        }
        const ExactPropagator propagator(h, n);
        for (std::size_t i = 0; i < times.size(); ++i) {
          const Eigen::VectorXd p = propagator.probabilities(times[i]);
          result.p_down[i] += weight * p[n - 1];
          if (k > 0) result.p_up[i] += weight * p[n + 1];
        }
      }
    }
  }
  return result;
}

}  // namespace dqo
