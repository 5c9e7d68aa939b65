#pragma once

// Semiclassical tunneling splitting of the ground doublet.
//
//   dE_wkb  = (2 hbar / T) exp(-S)                      (quadrature of S, T)
//   dE_asym = hbar w 4 sqrt(e) / (pi eta) exp(-2/(3 eta^2)) delta(eta)
//   dE_in   = 4 hbar w / (sqrt(pi) eta) exp(-2/(3 eta^2))
//
// Splittings underflow quickly (exp(-66.7) at eta = 0.1, exp(-266) at 0.05),
// so they are carried as logarithms of dE / (hbar w) and exponentiated only
// on request.

#include <cmath>
#include <numbers>

#include "dwsplit/model.hpp"
#include "dwsplit/perturbation.hpp"
#include "dwsplit/quadrature.hpp"

namespace dwsplit {

struct TurningPoints {
  double alpha = 0.0;  // inner pair +-alpha
  double gamma = 0.0;  // outer pair +-gamma
};

/// A splitting stored as ln(dE / (hbar w)) with its energy unit.
struct LogSplitting {
  double log_reduced = 0.0;
  double rel_error = 0.0;
  double energy_unit = 1.0;

  double log() const { return log_reduced + std::log(energy_unit); }
  double reduced() const { return std::exp(log_reduced); }
  double value() const { return std::exp(log()); }
};

inline TurningPoints turning_points(const WellParameters& p, const PerturbedLevel& level) {
  if (!level.below_barrier) throw DomainError("energy at or above barrier; no tunneling regime");
  const double a = p.half_separation();
  const double shift = 2.0 * p.eta() * std::sqrt(1.0 + level.epsilon);
  return {a * std::sqrt(1.0 - shift), a * std::sqrt(1.0 + shift)};
}

namespace detail {

// Natural-units kernels.  V - E = (x^2 - alpha^2)(x^2 - gamma^2) / (8 a^2).

inline QuadratureResult action_natural(double a, const TurningPoints& tp, double tol) {
  const double alpha = tp.alpha;
  const double g2 = tp.gamma * tp.gamma;
  // S = (1/a) int_0^alpha sqrt((alpha - x)(alpha + x)(gamma^2 - x^2)) dx
  auto f = [&](double x, double, double to_alpha) {
    return std::sqrt(to_alpha * (alpha + x) * (g2 - x * x));
  };
  QuadratureResult q = tanh_sinh(f, 0.0, alpha, {.rel_tol = tol});
  q.value /= a;
  q.error /= a;
  return q;
}

inline QuadratureResult period_natural(double a, const TurningPoints& tp, double tol) {
  const double alpha = tp.alpha;
  const double gamma = tp.gamma;
  // w T = 4 a int_alpha^gamma dx / sqrt((x - alpha)(x + alpha)(gamma - x)(gamma + x))
  auto f = [&](double x, double from_alpha, double to_gamma) {
    return 1.0 / std::sqrt(from_alpha * (x + alpha) * to_gamma * (gamma + x));
  };
  QuadratureResult q = tanh_sinh(f, alpha, gamma, {.rel_tol = tol});
  q.value *= 4.0 * a;
  q.error *= 4.0 * a;
  return q;
}

inline void check_tolerance(double tol) {
  if (!(tol >= 1e-13 && tol <= 1e-6)) throw DomainError("quadrature tolerance must lie in [1e-13, 1e-6]");
}

inline TurningPoints to_natural(const WellParameters& p, const TurningPoints& tp) {
  const double l = p.length_unit();
  return {tp.alpha / l, tp.gamma / l};
}

}  // namespace detail

/// Barrier action S (dimensionless) between -alpha and alpha.
inline QuadratureResult action_S(const WellParameters& p, const PerturbedLevel& level,
                                 const TurningPoints& tp, double tol = 1e-10) {
  detail::check_tolerance(tol);
  if (!level.below_barrier) throw DomainError("energy at or above barrier; no tunneling regime");
  return detail::action_natural(1.0 / p.eta(), detail::to_natural(p, tp), tol);
}

/// Classical period T between alpha and gamma, in time units of the parameters.
inline QuadratureResult period_T(const WellParameters& p, const PerturbedLevel& level,
                                 const TurningPoints& tp, double tol = 1e-10) {
  detail::check_tolerance(tol);
  if (!level.below_barrier) throw DomainError("energy at or above barrier; no tunneling regime");
  QuadratureResult q = detail::period_natural(1.0 / p.eta(), detail::to_natural(p, tp), tol);
  q.value *= p.time_unit();
  q.error *= p.time_unit();
  return q;
}

/// Upper edge of the eta window in which the splitting formulas are evaluated.
inline double max_valid_eta() { return validity_boundary(ExpansionMode::paper); }

inline void require_valid_eta(double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  if (eta >= max_valid_eta() || !(1.0 + epsilon_closed_form(eta) > 0.0))
    throw DomainError("eta outside the tunneling regime (eta must be below " +
                      std::to_string(max_valid_eta()) + ")");
}

inline double ln_delta_factor(double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  const double eps = epsilon_closed_form(eta);
  const double q = 1.0 + eps;
  if (!(q > 0.0)) throw DomainError("1 + eps(eta) must be positive");
  return -0.5 * std::log(q) + 0.5 * eps - eps * std::log(eta * std::sqrt(q) / 4.0);
}

/// Anharmonicity correction factor delta(eta).
inline double delta_factor(double eta) { return std::exp(ln_delta_factor(eta)); }

/// sqrt(e / pi): the splitting ratio with the anharmonic correction removed.
inline double ratio_uncorrected() {
  return std::sqrt(std::numbers::e / std::numbers::pi);
}

inline double ratio_wkb_instanton(double eta) {
  require_valid_eta(eta);
  return ratio_uncorrected() * delta_factor(eta);
}

inline LogSplitting splitting_instanton(const WellParameters& p) {
  const double eta = p.eta();
  const double ln = std::log(4.0 / (std::sqrt(std::numbers::pi) * eta)) - 2.0 / (3.0 * eta * eta);
  return {ln, 0.0, p.energy_unit()};
}

inline LogSplitting splitting_asymptotic(const WellParameters& p) {
  const double eta = p.eta();
  require_valid_eta(eta);
  const double ln = std::log(4.0 * std::sqrt(std::numbers::e) / (std::numbers::pi * eta)) -
                    2.0 / (3.0 * eta * eta) + ln_delta_factor(eta);
  return {ln, 0.0, p.energy_unit()};
}

struct WkbQuadrature {
  TurningPoints turning;  // natural units
  QuadratureResult action;
  QuadratureResult omega_period;  // w T
  LogSplitting splitting;
};

/// dE = (2 hbar / T) exp(-S) with S and T by quadrature at the perturbed level.
inline WkbQuadrature wkb_quadrature(const WellParameters& p, const PerturbedLevel& level,
                                    double tol = 1e-10) {
  detail::check_tolerance(tol);
  require_valid_eta(p.eta());
  const TurningPoints tp = turning_points(p, level);
  WkbQuadrature w;
  w.turning = detail::to_natural(p, tp);
  const double a = 1.0 / p.eta();
  w.action = detail::action_natural(a, w.turning, tol);
  w.omega_period = detail::period_natural(a, w.turning, tol);
  w.splitting.log_reduced = std::log(2.0 / w.omega_period.value) - w.action.value;
  w.splitting.rel_error = w.action.error + w.omega_period.error / w.omega_period.value;
  w.splitting.energy_unit = p.energy_unit();
  return w;
}

inline LogSplitting splitting_wkb_exact(const WellParameters& p, const PerturbedLevel& level,
                                        double tol = 1e-10) {
  return wkb_quadrature(p, level, tol).splitting;
}

inline LogSplitting splitting_wkb_exact(const WellParameters& p,
                                        ExpansionMode mode = ExpansionMode::paper,
                                        double tol = 1e-10) {
  return splitting_wkb_exact(p, perturbed_level(p, mode), tol);
}

/// All semiclassical quantities at one eta.  Lengths are in oscillator units
/// sqrt(hbar / (m w)), energies as ln(dE / (hbar w)).
struct SplittingReport {
  double eta = 0.0;
  double epsilon = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double action = 0.0;
  double omega_period = 0.0;
  double ln_dE_wkb = 0.0;
  double ln_dE_asym = 0.0;
  double ln_dE_instanton = 0.0;
  double delta = 0.0;
  double ratio_corrected = 0.0;
  double ratio_uncorrected = 0.0;
  double wkb_rel_error = 0.0;
};

inline SplittingReport make_report(const WellParameters& p,
                                   ExpansionMode mode = ExpansionMode::paper, double tol = 1e-10) {
  const PerturbedLevel level = perturbed_level(p, mode);
  const WkbQuadrature w = wkb_quadrature(p, level, tol);
  SplittingReport r;
  r.eta = p.eta();
  r.epsilon = level.epsilon;
  r.alpha = w.turning.alpha;
  r.gamma = w.turning.gamma;
  r.action = w.action.value;
  r.omega_period = w.omega_period.value;
  r.ln_dE_wkb = w.splitting.log_reduced;
  r.wkb_rel_error = w.splitting.rel_error;
  r.ln_dE_asym = splitting_asymptotic(p).log_reduced;
  r.ln_dE_instanton = splitting_instanton(p).log_reduced;
  r.delta = delta_factor(r.eta);
  r.ratio_corrected = ratio_uncorrected() * r.delta;
  r.ratio_uncorrected = ratio_uncorrected();
  return r;
}

}  // namespace dwsplit
