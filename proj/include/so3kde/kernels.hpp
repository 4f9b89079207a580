#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "so3kde/harmonics.hpp"
#include "so3kde/spectra.hpp"

namespace so3kde {

/// Relative cutoff for infinite heat-type series: a degree stops contributing
/// once (2l+1) a_l drops below this.
inline constexpr double kSeriesCutoff = 1e-16;

struct Heat {
  double rho = 1.0;
};
struct VallePoussin {
  int kappa = 0;
};
struct Characteristic {
  int L = 0;
};

/// One of the zonal kernel families with the degree at which its series is cut.
struct KernelSpec {
  std::variant<Heat, VallePoussin, Characteristic> family;
  int truncation = kDefaultMaxDegree;
};

KernelSpec heat_kernel(double rho, int truncation = kDefaultMaxDegree);
KernelSpec vp_kernel(int kappa);
KernelSpec characteristic_kernel(int L);

/// Throws std::invalid_argument when parameters are out of range.
void validate(const KernelSpec& spec);

/// "heat", "vp" or "char".
std::string family_name(const KernelSpec& spec);
/// rho, kappa or L as a real number.
double bandwidth(const KernelSpec& spec);
/// "heat:0.0625", "vp:30", "char:5"; parse_kernel_spec reads the same form.
std::string to_string(const KernelSpec& spec);
KernelSpec parse_kernel_spec(std::string_view text, int truncation = kDefaultMaxDegree);

/// e^{-l(l+1) rho}, l = 0..L.
ZonalSpectrumd heat_coefficients(double rho, int L);
/// C(2k+1, k-l) / C(2k+1, k) for l <= kappa, zero above, l = 0..L.
ZonalSpectrumd vp_coefficients(int kappa, int L);
/// Ones for l <= Lc, zeros above, l = 0..L.
ZonalSpectrumd characteristic_coefficients(int Lc, int L);
ZonalSpectrumd characteristic_coefficients(int Lc);

/// Coefficients of spec on exactly degrees 0..L.
ZonalSpectrumd kernel_coefficients(const KernelSpec& spec, int L);
/// The kernel's own series: heat cut by the series rule at spec.truncation,
/// VP and characteristic up to their bandlimit.
ZonalSpectrumd kernel_series(const KernelSpec& spec);
/// Highest degree kernel_series can return.
int kernel_bandlimit(const KernelSpec& spec);

/// Degree at which the heat series for rho stops: first l with
/// (2l+1) e^{-l(l+1) rho} < kSeriesCutoff, or L.
int heat_series_degree(double rho, int L);

double evaluate_kernel(const KernelSpec& spec, double omega);

/// Diffusive wavelets at scale rho.
struct WaveletFamily {
  double rho = 1.0;
  int truncation = kDefaultMaxDegree;
};

/// sum_l (2l+1)^2 l(l+1) e^{-l(l+1) rho}, stopping when a term falls below
/// kSeriesCutoff times the partial sum or at degree L.
double alpha(double rho, int L = kDefaultMaxDegree);
/// Degree at which alpha's series stops.
int alpha_series_degree(double rho, int L = kDefaultMaxDegree);

/// alpha^{-1/2} sqrt(l(l+1)) e^{-l(l+1) rho / 2} over the same degrees as alpha.
ZonalSpectrumd wavelet_coefficients(const WaveletFamily& w);

struct AdmissibilityResidual {
  double closed_form = 0;
  double quadrature = 0;
};

/// |int_rho^inf l(l+1) e^{-l(l+1) t} dt - e^{-l(l+1) rho}| from the antiderivative
/// and from adaptive Gauss-Kronrod quadrature. Degree 0 is rejected.
AdmissibilityResidual admissibility_residual(double rho, int ell);

/// Closed-form C cos^{2 kappa}(omega/2) of the VP kernel, with C fixing unit mass.
double vp_closed_form(int kappa, double omega);

/// 0.2 uniform + 0.7 VP(30) + 0.1 VP(45), centers the inverses of
/// R(e1, pi/6) and R(e2, 4 pi/9).
ZonalMixture default_test_mixture();

}  // namespace so3kde
