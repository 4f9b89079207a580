#include "so3kde/estimators.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace so3kde {
namespace {

void check_sample(const RotationSample& sample) {
  if (sample.empty()) throw std::invalid_argument("estimator: empty sample");
}

double average_zonal(const RotationSample& sample, const ZonalSpectrumd& series, const Rotationd& x) {
  double sum = 0;
  for (const auto& xk : sample) sum += zonal_synthesize(series, distance(xk, x));
  return sum / double(sample.size());
}

}  // namespace

KernelSpec estimator_kernel(const EstimatorSpec& spec) {
  if (const auto* g = std::get_if<GeneralKernel>(&spec)) return g->kernel;
  if (const auto* c = std::get_if<CharacteristicFunction>(&spec)) return characteristic_kernel(c->L);
  const auto& h = std::get<HeatWavelet>(spec);
  return heat_kernel(h.t, h.truncation);
}

EmpiricalCharacteristic characteristic_spectrum(const RotationSample& sample, int L) {
  check_sample(sample);
  check_degree(L);
  FullSpectrum phi(L);
  for (const auto& x : sample) {
    const auto d = wigner_d_matrices(L, x);
    for (int l = 1; l <= L; ++l) phi[l] += d[l].conjugate();
  }
  const double inv = 1.0 / double(sample.size());
  for (int l = 1; l <= L; ++l) phi[l] *= inv;
  phi[0](0, 0) = 1.0;
  return EmpiricalCharacteristic(std::move(phi), sample.size());
}

double kernel_estimate(const RotationSample& sample, const KernelSpec& spec, const Rotationd& x) {
  check_sample(sample);
  return average_zonal(sample, kernel_series(spec), x);
}

double characteristic_density_estimate(const RotationSample& sample, int L, const Rotationd& x) {
  check_sample(sample);
  if (L < 0) throw std::invalid_argument("characteristic estimator: negative degree");
  double sum = 0;
  for (const auto& xk : sample) {
    const auto chi = characters(L, distance(xk, x));
    for (int l = 0; l <= L; ++l) sum += (2.0 * l + 1.0) * chi[l];
  }
  return sum / double(sample.size());
}

double wavelet_coefficient_estimate(const RotationSample& sample, const WaveletFamily& w, const Rotationd& g) {
  check_sample(sample);
  return average_zonal(sample, wavelet_coefficients(w), g);
}

double wavelet_density_estimate(const RotationSample& sample, const HeatWavelet& spec, const Rotationd& x) {
  return kernel_estimate(sample, heat_kernel(spec.t, spec.truncation), x);
}

std::vector<double> wavelet_density_estimate_via_scales(const RotationSample& sample, const HeatWavelet& spec,
                                                        const std::vector<Rotationd>& xs, int per_octave) {
  check_sample(sample);
  const int L = spec.truncation;
  const QuadratureGrid grid(L);
  const auto scales = log_scale_grid(spec.t, 1e-12, per_octave);
  const auto n = Eigen::Index(grid.size());

  // Sample averages of chi^l(X_k^-1 g) at every node; WT at any scale is a
  // weighted sum of these columns.
  Eigen::MatrixXd sample_chars = Eigen::MatrixXd::Zero(n, L + 1);
  Eigen::VectorXd node_weight(n);
  for (int j = 0; j < grid.n_theta(); ++j) {
    for (int k = 0; k < grid.n_psi(); ++k) {
      for (int i = 0; i < grid.n_phi(); ++i) {
        const auto idx = Eigen::Index(grid.index(i, j, k));
        const Rotationd g = grid.rotation(i, j, k);
        node_weight[idx] = grid.node_weight(j);
        for (const auto& xk : sample) sample_chars.row(idx) += characters(L, distance(xk, g)).transpose();
      }
    }
  }
  sample_chars /= double(sample.size());

  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) {
    Eigen::MatrixXd point_chars(n, L + 1);
    for (int j = 0; j < grid.n_theta(); ++j) {
      for (int k = 0; k < grid.n_psi(); ++k) {
        for (int i = 0; i < grid.n_phi(); ++i) {
          point_chars.row(Eigen::Index(grid.index(i, j, k))) =
              characters(L, distance(grid.rotation(i, j, k), x)).transpose();
        }
      }
    }
    double value = 1.0;
    for (Eigen::Index s = 0; s < scales.t.size(); ++s) {
      const double t = scales.t[s];
      const auto psi = wavelet_coefficients({t, L});
      Eigen::VectorXd c = Eigen::VectorXd::Zero(L + 1);
      for (int l = 1; l <= psi.degree(); ++l) c[l] = (2.0 * l + 1.0) * psi[l];
      const Eigen::VectorXd wt = sample_chars * c;   // estimated WT(t, g)
      const Eigen::VectorXd back = point_chars * c;  // Psi_t(g^-1 x)
      value += scales.weights[s] * alpha(t, L) * (node_weight.array() * wt.array() * back.array()).sum();
    }
    out.push_back(value);
  }
  return out;
}

double estimate(const RotationSample& sample, const EstimatorSpec& spec, const Rotationd& x) {
  if (const auto* g = std::get_if<GeneralKernel>(&spec)) return kernel_estimate(sample, g->kernel, x);
  if (const auto* c = std::get_if<CharacteristicFunction>(&spec)) {
    return characteristic_density_estimate(sample, c->L, x);
  }
  return wavelet_density_estimate(sample, std::get<HeatWavelet>(spec), x);
}

Eigen::VectorXd estimate_on_grid(const RotationSample& sample, const EstimatorSpec& spec,
                                 const QuadratureGrid& grid) {
  check_sample(sample);
  const auto series = kernel_series(estimator_kernel(spec));
  return sample_on_grid(grid, [&](const Rotationd& x) { return average_zonal(sample, series, x); });
}

FullSpectrum estimate_spectrum(const RotationSample& sample, const EstimatorSpec& spec, int L) {
  return apply_zonal(characteristic_spectrum(sample, L).spectrum(),
                     kernel_coefficients(estimator_kernel(spec), L));
}

void write_grid_csv(std::ostream& os, const QuadratureGrid& grid, const Eigen::VectorXd& values) {
  if (std::size_t(values.size()) != grid.size()) {
    throw std::invalid_argument("write_grid_csv: value count does not match the grid");
  }
  os << "phi,theta,psi,value\n" << std::setprecision(17);
  for (int j = 0; j < grid.n_theta(); ++j) {
    for (int k = 0; k < grid.n_psi(); ++k) {
      for (int i = 0; i < grid.n_phi(); ++i) {
        os << grid.phi()[i] << ',' << grid.theta()[j] << ',' << grid.psi()[k] << ','
           << values[Eigen::Index(grid.index(i, j, k))] << '\n';
      }
    }
  }
}

}  // namespace so3kde
