#pragma once

// Symmetric quartic double-well potential
//
//   V(x) = m w^2 / (8 a^2) * (x - a)^2 (x + a)^2
//
// with minima at +-a and barrier height m w^2 a^2 / 8.  Everything downstream
// works in natural units (m = w = hbar = 1, a = 1/eta); physical inputs are
// reduced through eta() on entry and rescaled on exit.

#include <cmath>
#include <stdexcept>
#include <string>

namespace dwsplit {

/// Raised for inputs outside the domain of an operation (bad parameters,
/// above-barrier levels, eta outside the validity window).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a numerical procedure (quadrature, eigensolver, resolution
/// guard) cannot deliver a result at the requested accuracy.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what, double estimate = NAN)
      : std::runtime_error(what), estimate_(estimate) {}
  /// Error estimate at the point of failure, NaN when not applicable.
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

class WellParameters {
 public:
  WellParameters(double mass, double angular_frequency, double half_separation,
                 double hbar = 1.0)
      : mass_(mass), omega_(angular_frequency), a_(half_separation), hbar_(hbar) {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(mass_)) throw DomainError("mass must be positive and finite");
    if (!positive(omega_)) throw DomainError("angular frequency must be positive and finite");
    if (!positive(a_)) throw DomainError("half separation must be positive and finite");
    if (!positive(hbar_)) throw DomainError("hbar must be positive and finite");
    if (!positive(eta())) throw DomainError("eta is not a positive finite number");
  }

  double mass() const noexcept { return mass_; }
  double omega() const noexcept { return omega_; }
  double half_separation() const noexcept { return a_; }
  double hbar() const noexcept { return hbar_; }

  /// eta = sqrt(hbar / (m w a^2)).
  double eta() const noexcept { return std::sqrt(hbar_ / (mass_ * omega_ * a_ * a_)); }

  /// Energy unit hbar*w.
  double energy_unit() const noexcept { return hbar_ * omega_; }
  /// Oscillator length sqrt(hbar / (m w)).
  double length_unit() const noexcept { return std::sqrt(hbar_ / (mass_ * omega_)); }
  /// Time unit 1/w.
  double time_unit() const noexcept { return 1.0 / omega_; }

  double barrier_height() const noexcept { return mass_ * omega_ * omega_ * a_ * a_ / 8.0; }

 private:
  double mass_;
  double omega_;
  double a_;
  double hbar_;
};

/// Natural-units parameter set (m = w = hbar = 1) with the given eta, i.e. a = 1/eta.
inline WellParameters from_eta(double eta) {
  if (!(std::isfinite(eta) && eta > 0.0)) throw DomainError("eta must be positive");
  return WellParameters(1.0, 1.0, 1.0 / eta, 1.0);
}

inline double eta(const WellParameters& p) noexcept { return p.eta(); }

inline double potential(const WellParameters& p, double x) noexcept {
  const double a = p.half_separation();
  const double w = p.omega();
  const double d = (x - a) * (x + a);
  return p.mass() * w * w / (8.0 * a * a) * d * d;
}

/// Potential in natural units for a given eta: (x^2 - a^2)^2 / (8 a^2), a = 1/eta.
inline double potential_natural(double eta, double x) noexcept {
  const double a = 1.0 / eta;
  const double d = (x - a) * (x + a);
  return d * d / (8.0 * a * a);
}

}  // namespace dwsplit
