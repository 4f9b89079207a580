#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "so3kde/harmonics.hpp"
#include "so3kde/kernels.hpp"
#include "so3kde/spectra.hpp"

namespace so3kde {

/// Default cap on the number of grid nodes (about 400 MB of doubles).
inline constexpr std::size_t kDefaultMaxGridNodes = std::size_t(50'000'000);

/// Separable quadrature on SO(3) exact for products of two functions of degree
/// <= L: 2L+2 equispaced nodes in phi and psi, L+1 Gauss-Legendre nodes in
/// cos(theta). Weights are normalized to the Haar probability measure.
///
/// Values on the grid are stored flat, one theta slab after another; inside a
/// slab the layout is column-major (phi fastest), see index().
class QuadratureGrid {
 public:
  QuadratureGrid() = default;
  /// Throws std::length_error if the node count exceeds max_nodes.
  explicit QuadratureGrid(int L, std::size_t max_nodes = kDefaultMaxGridNodes);

  int bandlimit() const { return L_; }
  int n_phi() const { return static_cast<int>(phi_.size()); }
  int n_theta() const { return static_cast<int>(theta_.size()); }
  int n_psi() const { return static_cast<int>(psi_.size()); }
  std::size_t size() const { return std::size_t(n_phi()) * n_theta() * n_psi(); }
  std::size_t slab_size() const { return std::size_t(n_phi()) * n_psi(); }

  const Eigen::VectorXd& phi() const { return phi_; }
  const Eigen::VectorXd& theta() const { return theta_; }
  const Eigen::VectorXd& psi() const { return psi_; }
  /// Haar weight of every node in slab j (Gauss weight / 2 / (n_phi n_psi)).
  double node_weight(int j) const { return theta_weight_[j] / double(slab_size()); }
  const Eigen::VectorXd& theta_weights() const { return theta_weight_; }

  std::size_t index(int i_phi, int j_theta, int k_psi) const {
    return std::size_t(j_theta) * slab_size() + std::size_t(k_psi) * n_phi() + i_phi;
  }
  EulerZYZd euler(int i_phi, int j_theta, int k_psi) const {
    return {phi_[i_phi], theta_[j_theta], psi_[k_psi]};
  }
  Rotationd rotation(int i_phi, int j_theta, int k_psi) const {
    return from_euler_zyz(euler(i_phi, j_theta, k_psi));
  }

 private:
  int L_ = -1;
  Eigen::VectorXd phi_, theta_, psi_, theta_weight_;
};

/// Evaluate f(Rotationd) at every grid node.
template <typename F>
Eigen::VectorXd sample_on_grid(const QuadratureGrid& grid, F&& f) {
  Eigen::VectorXd v(Eigen::Index(grid.size()));
  for (int j = 0; j < grid.n_theta(); ++j) {
    for (int k = 0; k < grid.n_psi(); ++k) {
      for (int i = 0; i < grid.n_phi(); ++i) v[Eigen::Index(grid.index(i, j, k))] = f(grid.rotation(i, j, k));
    }
  }
  return v;
}

/// Haar integral of grid values.
double integrate(const QuadratureGrid& grid, const Eigen::VectorXd& values);

/// Largest deviation of the grid's Wigner-D Gram matrix from the orthogonality
/// relations <D^l_{nm}, D^l'_{n'm'}> = delta / (2l+1), for l, l' <= L.
double grid_orthogonality_error(const QuadratureGrid& grid, int L);

/// Fourier coefficients F^l_{nm} = <f, D^l_{nm}> for l <= L (default: grid
/// bandlimit). Throws std::invalid_argument on size mismatch or L above the
/// grid bandlimit.
FullSpectrum forward(const Eigen::VectorXd& values, const QuadratureGrid& grid, int L = -1);

template <typename F>
FullSpectrum forward_function(F&& f, const QuadratureGrid& grid, int L = -1) {
  return forward(sample_on_grid(grid, f), grid, L);
}

/// f(x) = sum_l (2l+1) sum_{n,m} F^l_{nm} D^l_{nm}(x).
std::complex<double> synthesize_complex(const FullSpectrum& f, const Rotationd& x);
double synthesize(const FullSpectrum& f, const Rotationd& x);

/// Real part of the synthesis at every grid node; any bandlimit is accepted.
Eigen::VectorXd synthesize_on_grid(const FullSpectrum& f, const QuadratureGrid& grid);
/// Largest imaginary part of the synthesis over the grid.
double synthesis_imaginary_residue(const FullSpectrum& f, const QuadratureGrid& grid);

/// WT_f(rho, g) = int f(y) Psi_rho(y^-1 g) dy by grid quadrature, with the
/// wavelet series cut at the grid bandlimit.
template <typename F>
double wavelet_transform(F&& f, const WaveletFamily& w, const Rotationd& g, const QuadratureGrid& grid) {
  const auto psi = wavelet_coefficients(w);
  const ZonalSpectrumd cut(psi.coeffs().head(std::min<Eigen::Index>(psi.size(), grid.bandlimit() + 1)));
  double sum = 0;
  for (int j = 0; j < grid.n_theta(); ++j) {
    double slab = 0;
    for (int k = 0; k < grid.n_psi(); ++k) {
      for (int i = 0; i < grid.n_phi(); ++i) {
        const Rotationd y = grid.rotation(i, j, k);
        slab += f(y) * zonal_synthesize(cut, distance(y, g));
      }
    }
    sum += grid.node_weight(j) * slab;
  }
  return sum;
}

/// Spectrum of WT_f(rho, .): block l scaled by Psi_rho^l.
FullSpectrum wavelet_transform_spectrum(const FullSpectrum& f, const WaveletFamily& w);

/// WT_f(rho, g) at every grid node, through the spectrum.
Eigen::VectorXd wavelet_transform_on_grid(const FullSpectrum& f, const WaveletFamily& w,
                                          const QuadratureGrid& grid);

/// Scales t_k = t_min 2^{k/per_octave}, k = 0..K, with K even and t_K past
/// T_max = -ln(tail)/2, where e^{-2 T_max} = tail bounds the integrand at
/// degree 1. Weights are composite Simpson in u = ln t, times dt/du = t.
struct ScaleGrid {
  Eigen::VectorXd t;
  Eigen::VectorXd weights;
};
ScaleGrid log_scale_grid(double t_min, double tail = 1e-12, int per_octave = 4);

/// Scale-integrated reconstruction int alpha(t) (WT_f(t,.) * Psi_t) dt over the
/// scale grid, as a spectrum, with the known mass 1 put back at degree 0.
/// wt[k] holds WT_f(t_k, .) on the grid.
FullSpectrum wavelet_inverse_spectrum(const std::vector<Eigen::VectorXd>& wt, const ScaleGrid& scales,
                                      const QuadratureGrid& grid, int truncation = kDefaultMaxDegree);

/// The same reconstruction evaluated on the grid.
Eigen::VectorXd wavelet_inverse(const std::vector<Eigen::VectorXd>& wt, const ScaleGrid& scales,
                                const QuadratureGrid& grid, int truncation = kDefaultMaxDegree);

// "ell,n,m,re,im" with a header row and 17 significant digits.
void write_full_spectrum_csv(std::ostream& os, const FullSpectrum& f);
FullSpectrum read_full_spectrum_csv(std::istream& is);

}  // namespace so3kde
