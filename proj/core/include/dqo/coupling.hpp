#pragma once

#include <functional>
#include <optional>
#include <variant>

namespace dqo {

// |f(omega)|^2 for the Ohmic choice f = sqrt(beta / (4 pi^2 omega^3)).
double coupling_special(double beta, double omega);

// Oscillator-reservoir coupling strength |f(omega)|^2, omega > 0.
class CouplingFunction {
 public:
  using Evaluator = std::function<double(double)>;

  static CouplingFunction special(double beta);
  static CouplingFunction general(Evaluator squared_magnitude);

  // |f(omega)|^2. General evaluators returning negative or non-finite
  // values raise Error{domain}.
  double operator()(double omega) const;

  bool is_special() const { return std::holds_alternative<Special>(impl_); }
  std::optional<double> special_beta() const;

 private:
  struct Special {
    double beta;
  };
  struct General {
    Evaluator squared_magnitude;
  };

  explicit CouplingFunction(std::variant<Special, General> impl) : impl_(std::move(impl)) {}

  std::variant<Special, General> impl_;
};

}  // namespace dqo
