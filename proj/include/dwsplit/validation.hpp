#pragma once

// Self-check suite behind `dwsplit validate`.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "dwsplit/perturbation.hpp"
#include "dwsplit/reproduce.hpp"
#include "dwsplit/semiclassics.hpp"
#include "dwsplit/spectral.hpp"

namespace dwsplit {

enum class CheckStatus { pass, fail, skipped };

inline std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  std::string detail;
};

inline CheckResult make_check(std::string name, bool ok, std::string detail) {
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

inline std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

inline CheckResult check_engine_vs_closed_form() {
  double worst = 0.0;
  for (double eta : linspace(0.01, 0.2, 50)) {
    const double engine = rs_engine(AnharmonicExpansion::of(from_eta(eta), ExpansionMode::paper), 2).epsilon;
    worst = std::max(worst, std::abs(engine - epsilon_closed_form(eta)));
  }
  return make_check("engine_vs_closed_form", worst <= 1e-12, "max |diff| = " + format_double(worst));
}

inline CheckResult check_series_coefficients() {
  const auto [c1, c2] = epsilon_series_coefficients(ExpansionMode::paper);
  const bool ok = std::abs(c1 - 25.0 / 16.0) <= 1e-12 && std::abs(c2 + 189.0 / 16.0) <= 1e-12;
  return make_check("series_coefficients", ok, "(" + format_double(c1) + ", " + format_double(c2) + ")");
}

inline double turning_point_residual(double eta) {
  const WellParameters p = from_eta(eta);
  const PerturbedLevel lv = perturbed_level(p);
  const TurningPoints tp = turning_points(p, lv);
  return std::max(std::abs(potential(p, tp.alpha) - lv.energy), std::abs(potential(p, tp.gamma) - lv.energy)) /
         lv.energy;
}

inline CheckResult check_turning_points() {
  double worst = 0.0;
  for (double eta : linspace(0.01, 0.3, 59)) worst = std::max(worst, turning_point_residual(eta));
  return make_check("turning_point_residuals", worst <= 1e-10, "max relative residual = " + format_double(worst));
}

inline CheckResult check_quadrature_convergence() {
  bool ok = true;
  std::string detail;
  for (double eta : {0.06, 0.1, 0.14}) {
    const WellParameters p = from_eta(eta);
    const PerturbedLevel lv = perturbed_level(p);
    const auto coarse = wkb_quadrature(p, lv, 1e-8);
    const auto fine = wkb_quadrature(p, lv, 1e-10);
    const double ds = std::abs(coarse.action.value - fine.action.value);
    const double dt = std::abs(coarse.omega_period.value - fine.omega_period.value);
    ok = ok && ds <= coarse.action.error && dt <= coarse.omega_period.error;
    detail += "eta=" + format_double(eta) + " dS=" + format_double(ds) + " dT=" + format_double(dt) + "; ";
  }
  return make_check("quadrature_convergence", ok, detail);
}

inline CheckResult check_table1_goldens() {
  std::string bad;
  for (const TableRow& r : check_table1())
    if (!r.ok) bad += format_double(r.eta) + " ";
  return make_check("table1_goldens", bad.empty(), bad.empty() ? "8/8 rows" : "mismatch at eta " + bad);
}

inline CheckResult check_crossing_point() {
  const double root = crossing_point();
  int sign_changes = 0;
  const auto etas = linspace(0.1, 0.15, 501);
  for (std::size_t i = 1; i < etas.size(); ++i)
    if ((ratio_wkb_instanton(etas[i - 1]) - 1.0) * (ratio_wkb_instanton(etas[i]) - 1.0) <= 0.0) ++sign_changes;
  const bool ok = std::abs(root - 0.122513) <= 5e-6 && sign_changes == 1;
  return make_check("crossing_point", ok, "root = " + format_double(root));
}

inline CheckResult check_uncorrected_limit() {
  const double d = delta_factor(0.005);
  const bool ok = std::abs(ratio_uncorrected() - 0.93019136710263286) <= 1e-6 && std::abs(d - 1.0) <= 1e-3;
  return make_check("uncorrected_limit", ok,
                    "sqrt(e/pi) = " + format_double(ratio_uncorrected()) + ", delta(0.005) = " + format_double(d));
}

inline CheckResult check_consistency_triangle() {
  double worst = 0.0;
  for (double eta : linspace(0.01, 0.5, 50)) {
    const WellParameters p = from_eta(eta);
    const double lhs = std::log(ratio_wkb_instanton(eta)) + splitting_instanton(p).log_reduced;
    worst = std::max(worst, std::abs(lhs - splitting_asymptotic(p).log_reduced));
  }
  return make_check("consistency_triangle", worst <= 1e-12, "max |ln diff| = " + format_double(worst));
}

inline std::vector<CheckResult> check_spectral() {
  std::vector<CheckResult> out;
  std::vector<double> x, y;
  for (double eta : {0.14, 0.16, 0.18, 0.20}) {
    const std::string name = "spectral_eta_" + format_double(eta);
    try {
      const WellParameters p = from_eta(eta);
      const SpectrumResult s = exact_splitting(p);
      const double ratio = splitting_asymptotic(p).value() / s.splitting;
      out.push_back(make_check(name, s.splitting > 0.0 && ratio >= 0.5 && ratio <= 2.0,
                               "dE = " + format_double(s.splitting) + ", asymptotic/exact = " + format_double(ratio)));
      x.push_back(1.0 / (eta * eta));
      y.push_back(std::log(s.splitting));
    } catch (const NumericalError& e) {
      out.push_back({name, CheckStatus::fail, e.what()});
    }
  }
  if (x.size() >= 2) {
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(y.size());
    double sxy = 0.0, sxx = 0.0;
    bool decreasing = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxy += (x[i] - mx) * (y[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
      if (i > 0 && !(y[i] > y[i - 1])) decreasing = false;  // x falls as eta rises
    }
    const double slope = sxy / sxx;
    out.push_back(make_check("spectral_log_slope",
                             decreasing && std::abs(slope / (-2.0 / 3.0) - 1.0) <= 0.15,
                             "slope = " + format_double(slope)));
  }
  for (double eta : {0.10, 0.05}) {
    const std::string name = "spectral_eta_" + format_double(eta);
    try {
      const SpectrumResult s = exact_splitting(from_eta(eta));
      out.push_back(make_check(name, s.splitting > 0.0, "dE = " + format_double(s.splitting)));
    } catch (const NumericalError&) {
      out.push_back({name, CheckStatus::skipped, "below resolution"});
    }
  }
  return out;
}

inline std::vector<CheckResult> run_validation() {
  std::vector<CheckResult> all;
  const std::vector<std::function<CheckResult()>> single{
      check_engine_vs_closed_form, check_series_coefficients, check_turning_points,
      check_quadrature_convergence, check_table1_goldens, check_crossing_point,
      check_uncorrected_limit, check_consistency_triangle};
  for (const auto& c : single) {
    try {
      all.push_back(c());
    } catch (const std::exception& e) {
      all.push_back({"exception", CheckStatus::fail, e.what()});
    }
  }
  for (auto& r : check_spectral()) all.push_back(std::move(r));
  return all;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
  return std::none_of(results.begin(), results.end(),
                      [](const CheckResult& r) { return r.status == CheckStatus::fail; });
}

}  // namespace dwsplit
