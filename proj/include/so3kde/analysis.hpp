#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "so3kde/estimators.hpp"
#include "so3kde/kernels.hpp"
#include "so3kde/spectra.hpp"
#include "so3kde/transform.hpp"

namespace so3kde {

/// Energy per degree E_l = (2l+1)^-1 sum |F^l_{nm}|^2, l = 0..L. E_0 = 1 for densities.
using EnergyProfile = Eigen::VectorXd;

/// Energy profile of a mixture through the quadrature transform on `grid`
/// (the independent path to mixture_energy_per_degree).
EnergyProfile quadrature_energy_profile(const ZonalMixture& m, const QuadratureGrid& grid);

/// max_l |a_l - b_l| / max(|a_l|, floor). Degrees where the reference energy
/// underflows to zero are compared absolutely at the floor scale.
double max_relative_difference(const EnergyProfile& reference, const EnergyProfile& other, double floor = 1e-8);

// With f = sum (2l+1) sum F D and <D, D> = 1/(2l+1), a degree-l block of
// energy E_l carries (2l+1)^2 E_l of squared L2 norm; every sum below uses
// that weight so that MISE is E||zeta - f||^2 in the Haar-normalized norm.

/// MISE = sum_{l=1}^{L} (2l+1)^2 [E (1 - X)^2 + K^-1 X^2 (1 - E)], X = kernel
/// coefficient. K may be any real >= 1 (the plateau is probed at 1e9).
double mise(const EnergyProfile& profile, const ZonalSpectrumd& kernel_coeffs, double K);

struct BiasVariance {
  double bias_sq = 0;
  double variance = 0;
};

/// bias^2 = ||f - Xi * f||^2, variance = K^-1 (||Xi||^2 - ||Xi * f||^2) restricted to l >= 1.
BiasVariance bias_variance_split(const EnergyProfile& profile, const ZonalSpectrumd& kernel_coeffs, double K);

/// mise with X_l = exp(-l(l+1) t), evaluated in its own loop.
double wavelet_mise(const EnergyProfile& profile, double t, double K);

/// t -> 0 limit: sum (2l+1)^2 K^-1 (1 - E_l).
double wavelet_mise_limit(const EnergyProfile& profile, double K);

/// Affine-in-t expansion sum (2l+1)^2 [(1 - 2 lam t) / K + E K^-1 (2 lam t (1 + K) - 1)],
/// lam = l(l+1). The 2 lam t E term makes this drift from wavelet_mise
/// faster than a true Taylor expansion would.
double wavelet_mise_first_order(const EnergyProfile& profile, double t, double K);

/// sum (2l+1)^2 E (1 - E) / ((K - 1) E + 1).
double optimal_mise_bound(const EnergyProfile& profile, double K);

/// Per-degree minimizer X*_l = K E / ((K - 1) E + 1); X*_0 = 1.
ZonalSpectrumd optimal_kernel_coefficients(const EnergyProfile& profile, double K);

struct MiseCurve {
  KernelSpec kernel;
  double bandwidth = 0;
  std::vector<double> K;
  std::vector<double> mise;
  std::vector<double> optimal_bound;
};

/// MISE over a K grid with the kernel cut at the profile's degree.
MiseCurve mise_curve(const EnergyProfile& profile, const KernelSpec& kernel, const std::vector<double>& Ks);

std::vector<MiseCurve> mise_curves(const EnergyProfile& profile, const std::vector<KernelSpec>& kernels,
                                   const std::vector<double>& Ks);

/// "kernel,bandwidth,K,mise,optimal_bound" with a header row and 17 significant digits.
void write_mise_curves_csv(std::ostream& os, const std::vector<MiseCurve>& curves);

struct MonteCarloResult {
  double mean = 0;
  double standard_error = 0;
  std::vector<double> ises;
};

/// ISE = int (zeta - f)^2 by grid quadrature, averaged over trials. Trial i
/// draws from RandomStream(seed, i); the estimate is built spectrally with the
/// kernel cut at the grid's degree, matching mise on an L = grid degree profile.
MonteCarloResult monte_carlo_ise(const ZonalMixture& m, const EstimatorSpec& spec, std::size_t K, int trials,
                                 std::uint64_t seed, const QuadratureGrid& grid);

}  // namespace so3kde
