#pragma once

#include <algorithm>
#include <initializer_list>
#include <iosfwd>
#include <vector>

#include <Eigen/Core>

#include "so3kde/harmonics.hpp"
#include "so3kde/rotation.hpp"

namespace so3kde {

/// Coefficients a_0 .. a_L of a zonal function f = sum_l (2l+1) a_l chi^l.
template <typename Scalar>
class ZonalSpectrum {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  ZonalSpectrum() = default;
  explicit ZonalSpectrum(Vector coeffs) : coeffs_(std::move(coeffs)) {}
  ZonalSpectrum(std::initializer_list<Scalar> values) : coeffs_(Eigen::Index(values.size())) {
    std::copy(values.begin(), values.end(), coeffs_.data());
  }

  /// Highest stored degree; -1 when empty.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Eigen::Index size() const { return coeffs_.size(); }
  bool empty() const { return coeffs_.size() == 0; }

  /// Coefficient of degree ell; zero past the stored degree.
  Scalar operator[](int ell) const { return ell <= degree() ? coeffs_[ell] : Scalar(0); }
  Scalar& operator[](int ell) { return coeffs_[ell]; }

  const Vector& coeffs() const { return coeffs_; }
  Vector& coeffs() { return coeffs_; }

 private:
  Vector coeffs_;
};

using ZonalSpectrumd = ZonalSpectrum<double>;

/// f(omega) = sum_l (2l+1) a_l chi^l(omega).
template <typename Scalar>
Scalar zonal_synthesize(const ZonalSpectrum<Scalar>& s, Scalar omega) {
  if (s.empty()) return Scalar(0);
  const auto chi = characters(s.degree(), omega);
  Scalar sum = 0;
  for (int l = 0; l <= s.degree(); ++l) sum += Scalar(2 * l + 1) * s[l] * chi[l];
  return sum;
}

/// Squared L2 norm sum_l (2l+1)^2 a_l^2.
template <typename Scalar>
Scalar zonal_energy(const ZonalSpectrum<Scalar>& s) {
  Scalar sum = 0;
  for (int l = 0; l <= s.degree(); ++l) {
    const Scalar t = Scalar(2 * l + 1) * s[l];
    sum += t * t;
  }
  return sum;
}

/// Convolution of zonal functions: per-degree product, truncated to the
/// shorter spectrum.
template <typename Scalar>
ZonalSpectrum<Scalar> zonal_convolve(const ZonalSpectrum<Scalar>& a, const ZonalSpectrum<Scalar>& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  return ZonalSpectrum<Scalar>(a.coeffs().head(n).cwiseProduct(b.coeffs().head(n)));
}

/// Fourier coefficients of a function on SO(3): one (2l+1)x(2l+1) complex
/// matrix per degree, f = sum_l (2l+1) sum_{n,m} F^l_{nm} D^l_{nm}.
class FullSpectrum {
 public:
  FullSpectrum() = default;
  explicit FullSpectrum(int bandlimit);
  explicit FullSpectrum(std::vector<Eigen::MatrixXcd> blocks);

  int bandlimit() const { return static_cast<int>(blocks_.size()) - 1; }
  const Eigen::MatrixXcd& operator[](int ell) const { return blocks_[ell]; }
  Eigen::MatrixXcd& operator[](int ell) { return blocks_[ell]; }

  /// sum_{l<=L} (2l+1)^2.
  std::size_t coefficient_count() const;

  /// Copy restricted to degrees <= L.
  FullSpectrum truncated(int L) const;

 private:
  std::vector<Eigen::MatrixXcd> blocks_;
};

/// Convolution with a zonal function: block l scaled by s[l] (zero past s).
FullSpectrum apply_zonal(const FullSpectrum& f, const ZonalSpectrumd& s);

/// (2l+1)^-1 sum_{n,m} |F^l_{nm}|^2 for each degree.
Eigen::VectorXd energy_per_degree(const FullSpectrum& f);

/// Spectrum of x -> psi(g^-1 x) for zonal psi: a_l conj(D^l(g)).
FullSpectrum translated_spectrum(const ZonalSpectrumd& s, const Rotationd& g, int L);

struct MixtureComponent {
  double weight = 0;
  ZonalSpectrumd kernel;  // a_0 == 1
  Rotationd center;       // component reads kernel(center^-1 x)
};

/// w0 + sum_i w_i psi_i(g_i^-1 x), weights summing to one.
class ZonalMixture {
 public:
  ZonalMixture() = default;
  /// Throws std::invalid_argument on negative weights, weights not summing to 1
  /// within 1e-12, or kernels without unit mass.
  ZonalMixture(double uniform_weight, std::vector<MixtureComponent> components);

  double uniform_weight() const { return uniform_weight_; }
  const std::vector<MixtureComponent>& components() const { return components_; }
  /// Largest kernel degree across components.
  int bandlimit() const;

 private:
  double uniform_weight_ = 1.0;
  std::vector<MixtureComponent> components_;
};

/// Energy per degree of a mixture from its kernels and the relative rotations
/// between centers, without forming the full spectrum.
Eigen::VectorXd mixture_energy_per_degree(const ZonalMixture& m, int L);

/// Closed-form full spectrum of a mixture.
FullSpectrum mixture_spectrum(const ZonalMixture& m, int L);

double mixture_evaluate(const ZonalMixture& m, const Rotationd& x);

// "ell,coeff" with a header row and 17 significant digits.
void write_zonal_spectrum_csv(std::ostream& os, const ZonalSpectrumd& s);
ZonalSpectrumd read_zonal_spectrum_csv(std::istream& is);

}  // namespace so3kde
