#pragma once

// Anharmonic shift of the ground level in one well.
//
// About x = a the potential reads (m w^2 / 2) y^2 [1 + y/a + k y^2/a^2] with
// y = x - a.  The printed expansion uses k = 3, the direct Taylor expansion
// gives k = 1/4; both are available as ExpansionMode.  The closed form
// eps = (eta^2/16)(25 - 189 eta^2) belongs to k = 3, and rs_engine re-derives
// it from second-order Rayleigh-Schroedinger theory in the oscillator basis.

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

#include "dwsplit/model.hpp"

namespace dwsplit {

enum class ExpansionMode { paper, taylor };

inline std::string_view to_string(ExpansionMode mode) {
  return mode == ExpansionMode::paper ? "paper" : "taylor";
}

/// H' = cubic * y^3 + quartic * y^4 about the minimum, on top of harmonic * y^2.
struct AnharmonicExpansion {
  double mass = 1.0;
  double hbar = 1.0;
  double harmonic = 0.5;  // m w^2 / 2
  double cubic = 0.0;
  double quartic = 0.0;
  double expansion_point = 0.0;

  double omega() const { return std::sqrt(2.0 * harmonic / mass); }

  static AnharmonicExpansion of(const WellParameters& p, ExpansionMode mode) {
    const double a = p.half_separation();
    const double c2 = 0.5 * p.mass() * p.omega() * p.omega();
    const double k = mode == ExpansionMode::paper ? 3.0 : 0.25;
    return {p.mass(), p.hbar(), c2, c2 / a, c2 * k / (a * a), a};
  }
};

/// eps(eta) = (eta^2 / 16)(25 - 189 eta^2).
inline double epsilon_closed_form(double eta) {
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  const double u = eta * eta;
  return u / 16.0 * (25.0 - 189.0 * u);
}

/// One intermediate state |k> of the second-order sum.
struct StateContribution {
  std::size_t k = 0;
  double cubic_element = 0.0;    // <k| cubic y^3 |0>
  double quartic_element = 0.0;  // <k| quartic y^4 |0>
  double energy = 0.0;           // |<k|H'|0>|^2 / (E_0 - E_k)
  /// Interference part 2 <k|c3 y^3|0><k|c4 y^4|0> / (E_0 - E_k).
  double cross_energy = 0.0;
};

struct RsResult {
  double unperturbed = 0.0;  // E_0 = hbar w / 2
  double first_order = 0.0;
  double second_order = 0.0;
  /// Second-order pieces split by origin; the cross part is zero by parity.
  double second_order_cubic = 0.0;
  double second_order_quartic = 0.0;
  double epsilon = 0.0;  // (E^(1) + E^(2)) / E_0
  std::vector<StateContribution> states;
};

namespace detail {

/// (a + a^dagger) applied to v in a basis of size v.size(); amplitudes that
/// would leave the basis are dropped.
inline std::vector<double> apply_ladder_sum(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    if (k + 1 < n) out[k] += std::sqrt(static_cast<double>(k + 1)) * v[k + 1];
    if (k > 0) out[k] += std::sqrt(static_cast<double>(k)) * v[k - 1];
  }
  return out;
}

}  // namespace detail

/// Columns <k|y^n|0> for n = 0..4, built from exact ladder algebra.
inline std::array<std::vector<double>, 5> position_power_elements(std::size_t basis, double length) {
  std::array<std::vector<double>, 5> cols;
  std::vector<double> v(basis, 0.0);
  v[0] = 1.0;
  double scale = 1.0;
  for (int n = 0; n <= 4; ++n) {
    cols[n].resize(basis);
    for (std::size_t k = 0; k < basis; ++k) cols[n][k] = scale * v[k];
    v = detail::apply_ladder_sum(v);
    scale *= length;
  }
  return cols;
}

/// Rayleigh-Schroedinger correction to the oscillator ground level for
/// H' = c3 y^3 + c4 y^4 through `order` (1 or 2), using basis states |0>..|truncation-1>.
inline RsResult rs_engine(const AnharmonicExpansion& exp, int order, std::size_t truncation = 5) {
  if (order != 1 && order != 2) throw DomainError("perturbation order must be 1 or 2");
  if (truncation < 5) throw DomainError("basis truncation must be at least 5");
  if (!(exp.harmonic > 0.0) || !(exp.mass > 0.0) || !(exp.hbar > 0.0))
    throw DomainError("harmonic coefficient, mass and hbar must be positive");

  const double w = exp.omega();
  const double quantum = exp.hbar * w;
  const double length = std::sqrt(exp.hbar / (2.0 * exp.mass * w));
  const auto y = position_power_elements(truncation, length);

  RsResult r;
  r.unperturbed = 0.5 * quantum;
  r.first_order = exp.cubic * y[3][0] + exp.quartic * y[4][0];
  if (order == 2) {
    for (std::size_t k = 1; k < truncation; ++k) {
      StateContribution s;
      s.k = k;
      s.cubic_element = exp.cubic * y[3][k];
      s.quartic_element = exp.quartic * y[4][k];
      const double gap = -static_cast<double>(k) * quantum;
      const double amp = s.cubic_element + s.quartic_element;
      s.energy = amp * amp / gap;
      s.cross_energy = 2.0 * s.cubic_element * s.quartic_element / gap;
      r.second_order += s.energy;
      r.second_order_cubic += s.cubic_element * s.cubic_element / gap;
      r.second_order_quartic += s.quartic_element * s.quartic_element / gap;
      r.states.push_back(s);
    }
  }
  r.epsilon = (r.first_order + r.second_order) / r.unperturbed;
  return r;
}

/// eps(eta) for the chosen expansion, natural units.
inline double epsilon_for(double eta, ExpansionMode mode) {
  if (mode == ExpansionMode::paper) return epsilon_closed_form(eta);
  return rs_engine(AnharmonicExpansion::of(from_eta(eta), mode), 2).epsilon;
}

/// Coefficients (c1, c2) of eps = c1 eta^2 + c2 eta^4 for an expansion family.
/// `make` maps eta to the natural-units expansion.  The engine output is an
/// exact quadratic in eta^2, so two evaluations fix it.
template <class MakeExpansion>
std::pair<double, double> epsilon_series_coefficients(MakeExpansion make) {
  constexpr double eta1 = 0.5;
  constexpr double eta2 = 1.0;
  const double u1 = eta1 * eta1;
  const double u2 = eta2 * eta2;
  const double e1 = rs_engine(make(eta1), 2).epsilon;
  const double e2 = rs_engine(make(eta2), 2).epsilon;
  // [u1 u1^2; u2 u2^2] [c1; c2] = [e1; e2]
  const double det = u1 * u2 * u2 - u2 * u1 * u1;
  const double c1 = (e1 * u2 * u2 - e2 * u1 * u1) / det;
  const double c2 = (u1 * e2 - u2 * e1) / det;
  return {c1, c2};
}

inline std::pair<double, double> epsilon_series_coefficients(ExpansionMode mode) {
  return epsilon_series_coefficients(
      [mode](double eta) { return AnharmonicExpansion::of(from_eta(eta), mode); });
}

struct PerturbedLevel {
  double unperturbed = 0.0;  // E_0 = hbar w / 2
  double epsilon = 0.0;
  double energy = 0.0;  // E_0 (1 + eps)
  bool below_barrier = false;
};

inline PerturbedLevel make_level(double eta, double epsilon, double energy_unit = 1.0) {
  PerturbedLevel lv;
  lv.unperturbed = 0.5 * energy_unit;
  lv.epsilon = epsilon;
  lv.energy = lv.unperturbed * (1.0 + epsilon);
  // E < m w^2 a^2 / 8  <=>  eta^2 (1 + eps) < 1/4
  lv.below_barrier = (1.0 + epsilon) > 0.0 && eta * eta * (1.0 + epsilon) < 0.25;
  return lv;
}

inline PerturbedLevel perturbed_level(const WellParameters& p,
                                      ExpansionMode mode = ExpansionMode::paper) {
  const double e = p.eta();
  const double eps = mode == ExpansionMode::paper
                         ? epsilon_closed_form(e)
                         : rs_engine(AnharmonicExpansion::of(p, mode), 2).epsilon;
  return make_level(e, eps, p.energy_unit());
}

/// Smallest eta > 0 at which the tunneling picture breaks down for the given
/// eps(eta): either 2 eta sqrt(1 + eps) reaches 1 (inner turning points merge
/// at the barrier top) or 1 + eps reaches 0.  Infinity if neither happens
/// below eta = 10.
template <class EpsilonFn>
double validity_boundary(EpsilonFn epsilon, double tol = 1e-12) {
  auto broken = [&](double eta) {
    const double q = 1.0 + epsilon(eta);
    return !(q > 0.0) || 2.0 * eta * std::sqrt(q) >= 1.0;
  };
  constexpr double step = 1e-3;
  double lo = 0.0;
  double hi = step;
  while (!broken(hi)) {
    lo = hi;
    hi += step;
    if (hi > 10.0) return std::numeric_limits<double>::infinity();
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (broken(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

inline double validity_boundary(ExpansionMode mode = ExpansionMode::paper) {
  if (mode == ExpansionMode::paper) {
    static const double paper = validity_boundary([](double e) { return epsilon_closed_form(e); });
    return paper;
  }
  static const double taylor =
      validity_boundary([](double e) { return epsilon_for(e, ExpansionMode::taylor); });
  return taylor;
}

}  // namespace dwsplit
