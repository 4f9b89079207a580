#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <ostream>

#include "selfcheck.hpp"
#include "so3kde/analysis.hpp"
#include "so3kde/sampling.hpp"
#include "svg.hpp"

namespace so3kde::app {
namespace {

constexpr double kPi = std::numbers::pi;

std::ofstream open_output(const ExperimentConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.output);
  std::ofstream out(cfg.output / name);
  if (!out) throw UsageError("cannot write " + (cfg.output / name).string());
  return out;
}

void write_svg(const ExperimentConfig& cfg, const std::string& name, const PlotSpec& spec,
               const std::vector<Series>& series) {
  auto out = open_output(cfg, name);
  write_svg_plot(out, spec, series);
}

ZonalMixture config_mixture(const ExperimentConfig& cfg) {
  try {
    return cfg.mixture();
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("mixture: ") + e.what());
  }
}

std::string bandwidth_label(const KernelSpec& k) { return to_string(k); }

}  // namespace

int cmd_profiles(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  auto out = open_output(cfg, "profiles.csv");
  out << "kernel,bandwidth,omega,value\n" << std::setprecision(17);
  std::map<std::string, std::vector<Series>> plots;
  const int n = cfg.profile_points;
  for (const auto& k : cfg.kernels()) {
    const auto series = kernel_series(k);
    Series s{bandwidth_label(k), {}, {}, palette(plots[family_name(k)].size())};
    for (int i = 0; i < n; ++i) {
      const double w = kPi * i / (n - 1);
      const double v = zonal_synthesize(series, w);
      out << family_name(k) << ',' << bandwidth(k) << ',' << w << ',' << v << '\n';
      s.x.push_back(w);
      s.y.push_back(v);
    }
    plots[family_name(k)].push_back(std::move(s));
  }
  if (opt.svg) {
    for (const auto& [family, series] : plots) {
      write_svg(cfg, "profiles_" + family + ".svg", {"Kernel profiles: " + family, "rotation angle", "value"},
                series);
    }
  }
  log << "profiles: " << cfg.kernels().size() << " kernels x " << n << " angles -> "
      << (cfg.output / "profiles.csv").string() << '\n';
  return kSuccess;
}

int cmd_mise(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  const auto m = config_mixture(cfg);
  EnergyProfile profile = mixture_energy_per_degree(m, cfg.bandlimit);
  int status = kSuccess;
  if (opt.via_quadrature) {
    const auto quad = quadrature_energy_profile(m, QuadratureGrid(cfg.bandlimit));
    const double gap = max_relative_difference(profile, quad);
    log << "mise: quadrature profile vs analytic, max relative difference " << gap << '\n';
    if (gap > 1e-8) {
      log << "mise: FAIL, profiles disagree beyond 1e-8\n";
      status = kValidationFailure;
    }
    profile = quad;
  }

  const auto Ks = cfg.sample_sizes();
  const auto curves = mise_curves(profile, cfg.kernels(), Ks);
  {
    auto out = open_output(cfg, "mise.csv");
    write_mise_curves_csv(out, curves);
  }
  {
    // The first-order expansion next to the exact heat MISE.
    auto out = open_output(cfg, "mise_heat_first_order.csv");
    out << "bandwidth,K,mise,first_order\n" << std::setprecision(17);
    for (int j : cfg.heat_j) {
      const double t = std::ldexp(1.0, -j);
      for (double K : Ks) {
        out << t << ',' << K << ',' << wavelet_mise(profile, t, K) << ',' << wavelet_mise_first_order(profile, t, K)
            << '\n';
      }
    }
  }

  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.K.size(); ++i) {
      if (c.mise[i] < c.optimal_bound[i] - 1e-10) {
        log << "mise: FAIL, " << to_string(c.kernel) << " below the optimal bound at K = " << c.K[i] << '\n';
        status = kValidationFailure;
      }
    }
  }
  std::map<std::string, double> best;
  for (const auto& c : curves) {
    const double v = mise(profile, kernel_coefficients(c.kernel, cfg.bandlimit), 1e4);
    auto [it, fresh] = best.emplace(family_name(c.kernel), v);
    if (!fresh) it->second = std::min(it->second, v);
  }
  log << "mise: " << curves.size() << " curves x " << Ks.size() << " sample sizes -> "
      << (cfg.output / "mise.csv").string() << "\nmise: best MISE at K = 1e4:";
  for (const auto& [family, v] : best) log << ' ' << family << '=' << v;
  log << " (bound " << optimal_mise_bound(profile, 1e4) << ")\n";

  if (opt.svg) {
    std::map<std::string, std::vector<Series>> plots;
    for (const auto& c : curves) {
      auto& list = plots[family_name(c.kernel)];
      list.push_back({bandwidth_label(c.kernel), c.K, c.mise, palette(list.size())});
    }
    for (auto& [family, series] : plots) {
      series.push_back({"optimal bound", curves.front().K, curves.front().optimal_bound, "#000000"});
      write_svg(cfg, "mise_" + family + ".svg", {"MISE: " + family, "sample size K", "MISE", true, true}, series);
    }
  }
  return status;
}

int cmd_mc_validate(const ExperimentConfig& cfg, const CommandOptions&, std::ostream& log) {
  const auto m = config_mixture(cfg);
  const QuadratureGrid grid(cfg.mc_grid);
  const auto profile = mixture_energy_per_degree(m, cfg.mc_grid);
  const double K = double(cfg.mc_sample_size);

  auto out = open_output(cfg, "mc_validate.csv");
  out << "case,K,trials,mean_ise,stderr,analytic_mise,z,passed\n" << std::setprecision(17);
  int status = kSuccess;
  for (std::size_t i = 0; i < cfg.mc_cases.size(); ++i) {
    const auto spec = parse_estimator_spec(cfg.mc_cases[i]);
    const auto r = monte_carlo_ise(m, spec, cfg.mc_sample_size, cfg.mc_trials, cfg.seed + 1000003ULL * i, grid);
    const double analytic = mise(profile, kernel_coefficients(estimator_kernel(spec), cfg.mc_grid), K);
    const double z = r.standard_error > 0 ? std::abs(r.mean - analytic) / r.standard_error
                                          : (std::abs(r.mean - analytic) > 1e-12 ? INFINITY : 0.0);
    const bool ok = z <= 3;
    if (!ok) status = kValidationFailure;
    out << cfg.mc_cases[i] << ',' << cfg.mc_sample_size << ',' << cfg.mc_trials << ',' << r.mean << ','
        << r.standard_error << ',' << analytic << ',' << z << ',' << (ok ? "true" : "false") << '\n';
    log << "mc-validate: " << cfg.mc_cases[i] << " mean ISE " << r.mean << " +- " << r.standard_error
        << ", analytic " << analytic << ", z = " << z << (ok ? " PASS" : " FAIL") << '\n';
  }
  return status;
}

int cmd_sample(const ExperimentConfig& cfg, const CommandOptions&, std::ostream& log) {
  const auto s = sample_mixture(config_mixture(cfg), cfg.sample_size, cfg.seed);
  auto out = open_output(cfg, "sample.csv");
  write_sample_csv(out, s);
  log << "sample: " << s.size() << " rotations -> " << (cfg.output / "sample.csv").string() << '\n';
  return kSuccess;
}

int cmd_estimate(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  const auto spec = parse_estimator_spec(cfg.estimator);
  const auto input = opt.input.empty() ? cfg.estimate_input : opt.input;
  RotationSample sample;
  if (input.empty()) {
    sample = sample_mixture(config_mixture(cfg), cfg.sample_size, cfg.seed);
  } else {
    std::ifstream in(input);
    if (!in) throw UsageError("cannot read sample file " + input.string());
    try {
      sample = read_sample_csv(in);
    } catch (const std::invalid_argument& e) {
      throw UsageError(input.string() + ": " + e.what());
    }
    if (sample.empty()) throw UsageError(input.string() + ": no rotations");
  }
  const QuadratureGrid grid(cfg.estimate_grid);
  const auto values = estimate_on_grid(sample, spec, grid);
  auto out = open_output(cfg, "estimate.csv");
  write_grid_csv(out, grid, values);
  log << "estimate: " << to_string(spec) << " from " << sample.size() << " rotations on a degree-"
      << cfg.estimate_grid << " grid, mass " << std::setprecision(12) << integrate(grid, values) << ", min "
      << values.minCoeff() << " -> " << (cfg.output / "estimate.csv").string() << '\n';
  return kSuccess;
}

int cmd_selfcheck(const ExperimentConfig& cfg, const CommandOptions& opt, std::ostream& log) {
  if (!opt.perturb.empty()) {
    const auto names = selfcheck_names();
    if (std::find(names.begin(), names.end(), opt.perturb) == names.end()) {
      throw UsageError("unknown check '" + opt.perturb + "'");
    }
  }
  const auto results = run_selfcheck({cfg.seed, opt.perturb});
  print_check_table(log, results);
  bool ok = true;
  auto out = open_output(cfg, "selfcheck.csv");
  out << "check,error,tolerance,passed\n" << std::setprecision(17);
  for (const auto& r : results) {
    out << r.name << ',' << r.error << ',' << r.tolerance << ',' << (r.passed ? "true" : "false") << '\n';
    ok = ok && r.passed;
  }
  log << (ok ? "selfcheck: all checks passed\n" : "selfcheck: FAILED\n");
  return ok ? kSuccess : kValidationFailure;
}

}  // namespace so3kde::app
