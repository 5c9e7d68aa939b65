#pragma once

// Test-only reference computations, independent of the library code paths.

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace oracle {

// Values computed offline with mpmath (40 digits, tanh-sinh after trig
// substitution) for natural units and eps(eta) = (eta^2/16)(25 - 189 eta^2).
inline constexpr double kActionEta01 = 62.41570055684486733642;
inline constexpr double kOmegaPeriodEta01 = 6.332081210954335302773;
inline constexpr double kActionEta002 = 1660.864464719047672357;

struct WkbDeviation {
  double eta;
  double exact_over_asymptotic_minus_one;
};
inline constexpr WkbDeviation kWkbDeviation[] = {
    {0.12, 5.901163978964689e-4},
    {0.10, 1.106019441365910e-3},
    {0.08, 1.241058618042397e-3},
    {0.06, 1.080664511950013e-3},
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  std::vector<double> x(n), w(n);
  for (int i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return {x, w};
}

/// Composite Gauss-Legendre over [lo, hi] with `panels` panels of order n.
inline double integrate(const std::function<double(double)>& f, double lo, double hi, int panels = 64, int n = 20) {
  const auto [x, w] = gauss_legendre(n);
  const double width = (hi - lo) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * width;
    for (int i = 0; i < n; ++i) sum += 0.5 * width * w[i] * f(c + 0.5 * width * x[i]);
  }
  return sum;
}

/// Turning points (alpha, gamma) in natural units for level energy E by
/// bisection on V(x) - E, no closed form involved.
inline std::pair<double, double> turning_points_bisection(double eta, double energy) {
  const double a = 1.0 / eta;
  auto g = [&](double x) { return (x - a) * (x - a) * (x + a) * (x + a) / (8.0 * a * a) - energy; };
  auto solve = [&](double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      ((g(lo) < 0.0) == (g(mid) < 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  return {solve(0.0, a), solve(a, 3.0 * a)};
}

/// S in natural units with x = alpha sin(t); the integrand becomes smooth.
inline double action(double eta, double alpha, double gamma) {
  const double a = 1.0 / eta;
  auto f = [&](double t) {
    const double x = alpha * std::sin(t);
    const double c = alpha * std::cos(t);
    // sqrt((alpha^2 - x^2)(gamma^2 - x^2)) dx = c * sqrt(gamma^2 - x^2) * c dt
    return c * c * std::sqrt(gamma * gamma - x * x);
  };
  return integrate(f, 0.0, std::numbers::pi / 2.0) / a;
}

/// w T in natural units with x = alpha cos^2 t + gamma sin^2 t.
inline double omega_period(double eta, double alpha, double gamma) {
  const double a = 1.0 / eta;
  auto f = [&](double t) {
    const double x = alpha * std::cos(t) * std::cos(t) + gamma * std::sin(t) * std::sin(t);
    // dx / sqrt((x-alpha)(gamma-x)) = 2 dt
    return 2.0 / std::sqrt((x + alpha) * (gamma + x));
  };
  return 4.0 * a * integrate(f, 0.0, std::numbers::pi / 2.0);
}

/// Second-order RS shift of the oscillator ground state for c3 y^3 + c4 y^4
/// (m = w = hbar = 1) from the tabulated matrix elements, as a fraction of 1/2.
inline double rs_epsilon(double c3, double c4) {
  const double l2 = 0.5;  // hbar / (2 m w)
  const double l = std::sqrt(l2);
  const double y3_1 = 3.0 * l2 * l;
  const double y3_3 = std::sqrt(6.0) * l2 * l;
  const double y4_0 = 3.0 * l2 * l2;
  const double y4_2 = 6.0 * std::sqrt(2.0) * l2 * l2;
  const double y4_4 = std::sqrt(24.0) * l2 * l2;
  const double first = c4 * y4_0;
  const double second = -(c3 * y3_1) * (c3 * y3_1) / 1.0 - (c4 * y4_2) * (c4 * y4_2) / 2.0 -
                        (c3 * y3_3) * (c3 * y3_3) / 3.0 - (c4 * y4_4) * (c4 * y4_4) / 4.0;
  return (first + second) / 0.5;
}

}  // namespace oracle
