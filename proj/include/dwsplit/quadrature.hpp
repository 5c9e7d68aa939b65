#pragma once

// Double-exponential (tanh-sinh) quadrature on a finite interval.
//
// The integrand receives the abscissa together with its distances to both
// endpoints, computed without cancellation.  Integrands with algebraic
// endpoint behaviour such as (x - lo)^(-1/2) or (hi - x)^(1/2) can then be
// written in factored form and evaluated to full relative precision right up
// to the endpoints.

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "dwsplit/model.hpp"

namespace dwsplit {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
  int levels = 0;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  int max_level = 10;   // node budget: about 9 * 2^max_level evaluations
  double t_max = 4.5;   // truncation of the transformed axis
};

/// Integrates f(x, x - lo, hi - x) over [lo, hi].  Throws NumericalError
/// carrying the last error estimate if the tolerance is not met within the
/// level budget.
template <class F>
QuadratureResult tanh_sinh(F&& f, double lo, double hi, const QuadratureOptions& opt = {}) {
  if (!(hi > lo)) throw DomainError("quadrature interval must satisfy lo < hi");
  constexpr double half_pi = std::numbers::pi / 2.0;
  const double c = 0.5 * (lo + hi);
  const double r = 0.5 * (hi - lo);

  QuadratureResult out;
  // Weighted contribution of the node pair at +-t (or the centre for t == 0).
  auto node_sum = [&](double t) {
    const double u = half_pi * std::sinh(t);
    const double cu = std::cosh(u);
    const double w = half_pi * std::cosh(t) / (cu * cu);
    const double near = r * std::exp(-u) / cu;  // distance to the closer endpoint
    const double far = 2.0 * r - near;
    if (t == 0.0) {
      ++out.evaluations;
      return w * f(c, r, r);
    }
    double s = 0.0;
    if (near > 0.0) {
      s += w * f(hi - near, far, near);
      s += w * f(lo + near, near, far);
      out.evaluations += 2;
    }
    return s;
  };

  double h = 1.0;
  double sum = 0.0;
  for (double t = 0.0; t <= opt.t_max; t += h) sum += node_sum(t);
  double estimate = r * h * sum;
  double error = std::numeric_limits<double>::infinity();

  for (int level = 1; level <= opt.max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= opt.t_max; t += 2.0 * h) sum += node_sum(t);
    const double next = r * h * sum;
    error = std::abs(next - estimate);
    error = std::max(error, 8.0 * std::numeric_limits<double>::epsilon() * std::abs(next));
    estimate = next;
    out.levels = level;
    if (!std::isfinite(estimate)) break;
    if (level >= 3 && error <= opt.rel_tol * std::abs(estimate)) {
      out.value = estimate;
      out.error = error;
      return out;
    }
  }
  throw NumericalError("quadrature did not converge: value " + std::to_string(estimate) +
                           ", error estimate " + std::to_string(error),
                       error);
}

}  // namespace dwsplit
