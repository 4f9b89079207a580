#include "so3kde/analysis.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace so3kde {
namespace {

void check_K(double K) {
  if (!(K >= 1)) throw std::invalid_argument("MISE: sample size must be >= 1");
}

double weight(int l) {
  const double d = 2.0 * l + 1.0;
  return d * d;
}

// Per-degree MISE term without the (2l+1)^2 weight.
double term(double E, double X, double K) { return E * (1 - X) * (1 - X) + X * X * (1 - E) / K; }

void check_inputs(const EnergyProfile& profile, const ZonalSpectrumd& coeffs, double K) {
  check_K(K);
  if (profile.size() == 0) throw std::invalid_argument("MISE: empty energy profile");
  if (coeffs.size() != profile.size()) {
    throw std::invalid_argument("MISE: kernel has " + std::to_string(coeffs.size()) + " coefficients, profile has " +
                                std::to_string(profile.size()));
  }
  // The degree-0 term vanishes only for a unit-mass density and a
  // mass-preserving kernel; the sums below skip it, so check it here.
  if (std::abs(term(profile[0], coeffs[0], K)) > 1e-12) {
    throw std::domain_error("MISE: degree-0 term is nonzero (profile or kernel is not mass preserving)");
  }
}

}  // namespace

EnergyProfile quadrature_energy_profile(const ZonalMixture& m, const QuadratureGrid& grid) {
  return energy_per_degree(forward_function([&](const Rotationd& x) { return mixture_evaluate(m, x); }, grid));
}

double max_relative_difference(const EnergyProfile& reference, const EnergyProfile& other, double floor) {
  if (reference.size() != other.size()) throw std::invalid_argument("max_relative_difference: length mismatch");
  double worst = 0;
  for (Eigen::Index l = 0; l < reference.size(); ++l) {
    worst = std::max(worst, std::abs(reference[l] - other[l]) / std::max(std::abs(reference[l]), floor));
  }
  return worst;
}

double mise(const EnergyProfile& profile, const ZonalSpectrumd& kernel_coeffs, double K) {
  check_inputs(profile, kernel_coeffs, K);
  double sum = 0;
  for (int l = 1; l < profile.size(); ++l) sum += weight(l) * term(profile[l], kernel_coeffs[l], K);
  return sum;
}

BiasVariance bias_variance_split(const EnergyProfile& profile, const ZonalSpectrumd& kernel_coeffs, double K) {
  check_inputs(profile, kernel_coeffs, K);
  BiasVariance out;
  for (int l = 1; l < profile.size(); ++l) {
    const double E = profile[l], X = kernel_coeffs[l];
    out.bias_sq += weight(l) * E * (1 - X) * (1 - X);
    out.variance += weight(l) * X * X * (1 - E);
  }
  out.variance /= K;
  return out;
}

double wavelet_mise(const EnergyProfile& profile, double t, double K) {
  check_K(K);
  if (!(t > 0)) throw std::invalid_argument("wavelet_mise: need t > 0");
  double sum = 0;
  for (int l = 1; l < profile.size(); ++l) {
    const double X = std::exp(-double(l) * (l + 1) * t);
    sum += weight(l) * term(profile[l], X, K);
  }
  return sum;
}

double wavelet_mise_limit(const EnergyProfile& profile, double K) {
  check_K(K);
  double sum = 0;
  for (int l = 1; l < profile.size(); ++l) sum += weight(l) * (1 - profile[l]);
  return sum / K;
}

double wavelet_mise_first_order(const EnergyProfile& profile, double t, double K) {
  check_K(K);
  double sum = 0;
  for (int l = 1; l < profile.size(); ++l) {
    const double lt = double(l) * (l + 1) * t;
    sum += weight(l) * ((1 - 2 * lt) / K + profile[l] / K * (2 * lt * (1 + K) - 1));
  }
  return sum;
}

double optimal_mise_bound(const EnergyProfile& profile, double K) {
  check_K(K);
  double sum = 0;
  for (int l = 1; l < profile.size(); ++l) {
    const double E = profile[l];
    sum += weight(l) * E * (1 - E) / ((K - 1) * E + 1);
  }
  return sum;
}

ZonalSpectrumd optimal_kernel_coefficients(const EnergyProfile& profile, double K) {
  check_K(K);
  Eigen::VectorXd x(profile.size());
  for (int l = 0; l < profile.size(); ++l) {
    const double E = profile[l];
    x[l] = l == 0 ? 1.0 : K * E / ((K - 1) * E + 1);
  }
  return ZonalSpectrumd(std::move(x));
}

MiseCurve mise_curve(const EnergyProfile& profile, const KernelSpec& kernel, const std::vector<double>& Ks) {
  MiseCurve c;
  c.kernel = kernel;
  c.bandwidth = bandwidth(kernel);
  const auto coeffs = kernel_coefficients(kernel, int(profile.size()) - 1);
  for (double K : Ks) {
    c.K.push_back(K);
    c.mise.push_back(mise(profile, coeffs, K));
    c.optimal_bound.push_back(optimal_mise_bound(profile, K));
  }
  return c;
}

std::vector<MiseCurve> mise_curves(const EnergyProfile& profile, const std::vector<KernelSpec>& kernels,
                                   const std::vector<double>& Ks) {
  std::vector<MiseCurve> out;
  out.reserve(kernels.size());
  for (const auto& k : kernels) out.push_back(mise_curve(profile, k, Ks));
  return out;
}

void write_mise_curves_csv(std::ostream& os, const std::vector<MiseCurve>& curves) {
  os << "kernel,bandwidth,K,mise,optimal_bound\n" << std::setprecision(17);
  for (const auto& c : curves) {
    for (std::size_t i = 0; i < c.K.size(); ++i) {
      os << family_name(c.kernel) << ',' << c.bandwidth << ',' << c.K[i] << ',' << c.mise[i] << ','
         << c.optimal_bound[i] << '\n';
    }
  }
}

MonteCarloResult monte_carlo_ise(const ZonalMixture& m, const EstimatorSpec& spec, std::size_t K, int trials,
                                 std::uint64_t seed, const QuadratureGrid& grid) {
  if (trials < 2) throw std::invalid_argument("monte_carlo_ise: need at least 2 trials");
  const KernelSpec kernel = estimator_kernel(spec);
  const int L = std::min(kernel_bandlimit(kernel), grid.bandlimit());
  const auto coeffs = kernel_coefficients(kernel, L);
  const Eigen::VectorXd truth = sample_on_grid(grid, [&](const Rotationd& x) { return mixture_evaluate(m, x); });

  MonteCarloResult r;
  r.ises.reserve(std::size_t(trials));
  for (int i = 0; i < trials; ++i) {
    const auto sample = sample_mixture(m, K, seed, std::uint64_t(i));
    const auto zeta = synthesize_on_grid(apply_zonal(characteristic_spectrum(sample, L).spectrum(), coeffs), grid);
    r.ises.push_back(integrate(grid, (zeta - truth).array().square().matrix()));
  }
  double sum = 0, sq = 0;
  for (double v : r.ises) sum += v;
  r.mean = sum / trials;
  for (double v : r.ises) sq += (v - r.mean) * (v - r.mean);
  r.standard_error = std::sqrt(sq / (trials - 1) / trials);
  return r;
}

}  // namespace so3kde
