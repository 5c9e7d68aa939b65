// dwsplit: tunneling splitting of the quartic double well from the command line.

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "dwsplit/dwsplit.hpp"

namespace {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kNumerical = 3 };

std::string to_lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

enum class Method { wkb_exact, asymptotic, instanton, spectral };

int run_table1() {
  const auto rows = dwsplit::check_table1();
  std::cout << "    eta     dE_WKB/dE_in   paper\n";
  bool ok = true;
  for (const auto& r : rows) {
    std::printf("%9s   %s        %s%s\n", dwsplit::format_double(r.eta).c_str(),
                dwsplit::format_fixed(r.computed, 5).c_str(), dwsplit::format_fixed(r.expected, 5).c_str(),
                r.ok ? "" : "   MISMATCH");
    ok = ok && r.ok;
  }
  if (!ok) {
    std::cerr << "table1: rows outside +-1e-5 of the reference values:";
    for (const auto& r : rows)
      if (!r.ok) std::cerr << ' ' << dwsplit::format_double(r.eta);
    std::cerr << '\n';
  }
  return ok ? kOk : kMismatch;
}

int run_sweep(const dwsplit::SweepSpec& spec, const std::string& out_path, unsigned threads,
              dwsplit::ExpansionMode mode, double tol) {
  const auto rows = dwsplit::sweep(spec, threads, mode, tol);
  if (out_path.empty() || out_path == "-") {
    dwsplit::write_csv(std::cout, rows);
    return kOk;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw dwsplit::DomainError("cannot open output file: " + out_path);
  dwsplit::write_csv(out, rows);
  out.close();
  if (!out) throw dwsplit::DomainError("failed writing output file: " + out_path);
  return kOk;
}

struct SplittingArgs {
  std::optional<double> eta;
  std::optional<double> a;
  double m = 1.0;
  double omega = 1.0;
  double hbar = 1.0;
  Method method = Method::asymptotic;
  dwsplit::ExpansionMode mode = dwsplit::ExpansionMode::paper;
  double tol = 1e-10;
  std::size_t points = 4001;
};

int run_splitting(const SplittingArgs& args) {
  if (args.eta.has_value() == args.a.has_value())
    throw dwsplit::DomainError("give exactly one of --eta or --a");
  const dwsplit::WellParameters p =
      args.a ? dwsplit::WellParameters(args.m, args.omega, *args.a, args.hbar)
             : dwsplit::WellParameters(args.m, args.omega,
                                       std::sqrt(args.hbar / (args.m * args.omega)) / *args.eta, args.hbar);
  double log_value = 0.0;
  double rel_error = 0.0;
  std::string name;
  switch (args.method) {
    case Method::wkb_exact: {
      const auto s = dwsplit::splitting_wkb_exact(p, args.mode, args.tol);
      log_value = s.log();
      rel_error = s.rel_error;
      name = "wkb-exact";
      break;
    }
    case Method::asymptotic:
      log_value = dwsplit::splitting_asymptotic(p).log();
      name = "asymptotic";
      break;
    case Method::instanton:
      log_value = dwsplit::splitting_instanton(p).log();
      name = "instanton";
      break;
    case Method::spectral: {
      const auto s = dwsplit::exact_splitting(p, args.points);
      log_value = std::log(s.splitting);
      rel_error = s.error_estimate() / s.splitting;
      name = "spectral";
      break;
    }
  }
  std::cout << "method=" << name << " eta=" << dwsplit::format_double(p.eta())
            << " dE=" << dwsplit::format_double(std::exp(log_value))
            << " ln_dE=" << dwsplit::format_double(log_value)
            << " rel_error=" << dwsplit::format_double(rel_error) << '\n';
  return kOk;
}

int run_validate(bool json) {
  const auto results = dwsplit::run_validation();
  const bool ok = dwsplit::all_passed(results);
  if (json) {
    for (const auto& r : results) {
      nlohmann::json j{{"check", r.name}, {"status", dwsplit::to_string(r.status)}, {"detail", r.detail}};
      std::cout << j.dump() << '\n';
    }
    std::size_t failed = 0, skipped = 0;
    for (const auto& r : results) {
      failed += r.status == dwsplit::CheckStatus::fail;
      skipped += r.status == dwsplit::CheckStatus::skipped;
    }
    nlohmann::json summary{{"summary", ok ? "pass" : "fail"},
                           {"checks", results.size()},
                           {"failed", failed},
                           {"skipped", skipped}};
    std::cout << summary.dump() << '\n';
  } else {
    for (const auto& r : results) {
      std::string status(dwsplit::to_string(r.status));
      if (r.status == dwsplit::CheckStatus::skipped) status += ": " + r.detail;
      std::cout << status << "  " << r.name;
      if (r.status != dwsplit::CheckStatus::skipped) std::cout << "  (" << r.detail << ")";
      std::cout << '\n';
    }
    std::cout << (ok ? "validate: all checks passed\n" : "validate: FAILED\n");
  }
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tunneling splitting of the symmetric quartic double well"};
  app.set_config("--config", "", "Config file (TOML/INI); command-line flags take precedence");
  app.require_subcommand(1);

  const std::map<std::string, dwsplit::ExpansionMode> modes{{"paper", dwsplit::ExpansionMode::paper},
                                                             {"taylor", dwsplit::ExpansionMode::taylor}};

  auto* table1 = app.add_subcommand("table1", "Reproduce the WKB/instanton ratio table");

  dwsplit::SweepSpec spec;
  std::string out_path;
  unsigned threads = 1;
  std::string sweep_mode = "paper";
  double sweep_tol = 1e-10;
  auto* sweep = app.add_subcommand("sweep", "Write a CSV of all quantities over an eta grid");
  sweep->add_option("--eta-min", spec.eta_min, "Smallest eta")->capture_default_str();
  sweep->add_option("--eta-max", spec.eta_max, "Largest eta")->capture_default_str();
  sweep->add_option("--steps", spec.steps, "Number of grid points")->capture_default_str();
  sweep->add_option("--spacing", spec.spacing, "linear or log")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, dwsplit::Spacing>{{"linear", dwsplit::Spacing::linear}, {"log", dwsplit::Spacing::log}},
          CLI::ignore_case));
  sweep->add_option("--out", out_path, "Output CSV path ('-' for stdout)");
  sweep->add_option("--threads", threads, "Worker threads")->capture_default_str();
  sweep->add_option("--mode", sweep_mode, "Anharmonic expansion: paper or taylor")
      ->check(CLI::IsMember(modes, CLI::ignore_case));
  sweep->add_option("--tol", sweep_tol, "Quadrature relative tolerance")->capture_default_str();

  SplittingArgs sargs;
  auto* splitting = app.add_subcommand("splitting", "Splitting at one parameter point");
  splitting->add_option("--eta", sargs.eta, "Dimensionless eta (sets a from m, omega, hbar)");
  splitting->add_option("--method", sargs.method, "wkb-exact, asymptotic, instanton or spectral")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Method>{{"wkb-exact", Method::wkb_exact},
                                                                        {"asymptotic", Method::asymptotic},
                                                                        {"instanton", Method::instanton},
                                                                        {"spectral", Method::spectral}},
                                          CLI::ignore_case));
  splitting->add_option("--m", sargs.m, "Mass")->capture_default_str();
  splitting->add_option("--omega", sargs.omega, "Angular frequency")->capture_default_str();
  splitting->add_option("--a", sargs.a, "Half separation of the minima");
  splitting->add_option("--hbar", sargs.hbar, "Reduced Planck constant")->capture_default_str();
  std::string splitting_mode = "paper";
  splitting->add_option("--mode", splitting_mode, "Anharmonic expansion for wkb-exact: paper or taylor")
      ->check(CLI::IsMember(modes, CLI::ignore_case));
  splitting->add_option("--tol", sargs.tol, "Quadrature relative tolerance")->capture_default_str();
  splitting->add_option("--points", sargs.points, "Grid points for the spectral method")->capture_default_str();

  bool json = false;
  auto* validate = app.add_subcommand("validate", "Run the self-check suite");
  validate->add_flag("--json", json, "JSON-lines output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*table1) return run_table1();
    if (*sweep) return run_sweep(spec, out_path, threads, modes.at(to_lower(sweep_mode)), sweep_tol);
    if (*splitting) {
      sargs.mode = modes.at(to_lower(splitting_mode));
      return run_splitting(sargs);
    }
    if (*validate) return run_validate(json);
  } catch (const dwsplit::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const dwsplit::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
