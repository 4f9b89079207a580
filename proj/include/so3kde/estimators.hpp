#pragma once

#include <cstddef>
#include <iosfwd>
#include <variant>
#include <vector>

#include "so3kde/kernels.hpp"
#include "so3kde/sampling.hpp"
#include "so3kde/spectra.hpp"
#include "so3kde/transform.hpp"

namespace so3kde {

struct GeneralKernel {
  KernelSpec kernel;
};
struct CharacteristicFunction {
  int L = 0;
};
struct HeatWavelet {
  double t = 1.0;
  int truncation = kDefaultMaxDegree;
};

using EstimatorSpec = std::variant<GeneralKernel, CharacteristicFunction, HeatWavelet>;

/// The zonal kernel an estimator averages over the sample.
KernelSpec estimator_kernel(const EstimatorSpec& spec);

/// Phi^l_{nm} = K^-1 sum_k conj(D^l_{nm}(X_k)), l = 0..L; Phi^0 = 1.
class EmpiricalCharacteristic {
 public:
  EmpiricalCharacteristic(FullSpectrum phi, std::size_t K) : phi_(std::move(phi)), K_(K) {}
  int bandlimit() const { return phi_.bandlimit(); }
  std::size_t sample_size() const { return K_; }
  const Eigen::MatrixXcd& operator[](int ell) const { return phi_[ell]; }
  const FullSpectrum& spectrum() const { return phi_; }

 private:
  FullSpectrum phi_;
  std::size_t K_;
};

EmpiricalCharacteristic characteristic_spectrum(const RotationSample& sample, int L);

/// zeta(x) = K^-1 sum_k Xi(angle(X_k^-1 x)).
double kernel_estimate(const RotationSample& sample, const KernelSpec& spec, const Rotationd& x);

/// K^-1 sum_k sum_{l<=L} (2l+1) chi^l(X_k^-1 x).
double characteristic_density_estimate(const RotationSample& sample, int L, const Rotationd& x);

/// K^-1 sum_k Psi_rho(angle(X_k^-1 g)).
double wavelet_coefficient_estimate(const RotationSample& sample, const WaveletFamily& w, const Rotationd& g);

/// K^-1 sum_k kappa_t(X_k^-1 x), kappa_t cut at spec.truncation.
double wavelet_density_estimate(const RotationSample& sample, const HeatWavelet& spec, const Rotationd& x);

/// The same estimate reached through the wavelet coefficients: the estimated
/// WT over scales >= t (log grid, Simpson) is convolved back with Psi on a
/// quadrature grid of the truncation degree, and the mass 1 is added.
std::vector<double> wavelet_density_estimate_via_scales(const RotationSample& sample, const HeatWavelet& spec,
                                                        const std::vector<Rotationd>& xs, int per_octave = 4);

double estimate(const RotationSample& sample, const EstimatorSpec& spec, const Rotationd& x);

/// Estimate at every node of the grid, by direct kernel sums.
Eigen::VectorXd estimate_on_grid(const RotationSample& sample, const EstimatorSpec& spec,
                                 const QuadratureGrid& grid);

/// Spectrum of the estimate up to degree L: kernel coefficients times Phi.
FullSpectrum estimate_spectrum(const RotationSample& sample, const EstimatorSpec& spec, int L);

// "phi,theta,psi,value" with a header row and 17 significant digits.
void write_grid_csv(std::ostream& os, const QuadratureGrid& grid, const Eigen::VectorXd& values);

}  // namespace so3kde
