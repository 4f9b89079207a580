#include "so3kde/kernels.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace so3kde {
namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

KernelSpec heat_kernel(double rho, int truncation) {
  KernelSpec s{Heat{rho}, truncation};
  validate(s);
  return s;
}

KernelSpec vp_kernel(int kappa) {
  KernelSpec s{VallePoussin{kappa}, kappa};
  validate(s);
  return s;
}

KernelSpec characteristic_kernel(int L) {
  KernelSpec s{Characteristic{L}, L};
  validate(s);
  return s;
}

void validate(const KernelSpec& spec) {
  if (spec.truncation < 0) throw std::invalid_argument("kernel truncation degree must be nonnegative");
  std::visit(Overloaded{
                 [](const Heat& h) {
                   if (!(h.rho > 0) || !std::isfinite(h.rho)) {
                     throw std::invalid_argument("heat kernel needs rho > 0");
                   }
                 },
                 [&](const VallePoussin& v) {
                   if (v.kappa < 0) throw std::invalid_argument("VP kernel needs kappa >= 0");
                   if (spec.truncation < v.kappa) {
                     throw std::invalid_argument("VP kernel truncated below its bandlimit");
                   }
                 },
                 [&](const Characteristic& c) {
                   if (c.L < 0) throw std::invalid_argument("characteristic kernel needs L >= 0");
                   if (spec.truncation < c.L) {
                     throw std::invalid_argument("characteristic kernel truncated below its bandlimit");
                   }
                 },
             },
             spec.family);
}

std::string family_name(const KernelSpec& spec) {
  return std::visit(Overloaded{[](const Heat&) { return std::string("heat"); },
                               [](const VallePoussin&) { return std::string("vp"); },
                               [](const Characteristic&) { return std::string("char"); }},
                    spec.family);
}

double bandwidth(const KernelSpec& spec) {
  return std::visit(Overloaded{[](const Heat& h) { return h.rho; },
                               [](const VallePoussin& v) { return double(v.kappa); },
                               [](const Characteristic& c) { return double(c.L); }},
                    spec.family);
}

std::string to_string(const KernelSpec& spec) {
  return std::visit(
      Overloaded{[](const Heat& h) { return "heat:" + format_real(h.rho); },
                 [](const VallePoussin& v) { return "vp:" + std::to_string(v.kappa); },
                 [](const Characteristic& c) { return "char:" + std::to_string(c.L); }},
      spec.family);
}

KernelSpec parse_kernel_spec(std::string_view text, int truncation) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw std::invalid_argument("kernel spec '" + std::string(text) + "' must look like family:value");
  }
  const std::string_view family = text.substr(0, colon);
  const std::string_view value = text.substr(colon + 1);
  const auto fail = [&]() {
    return std::invalid_argument("kernel spec '" + std::string(text) + "': bad value '" +
                                 std::string(value) + "'");
  };
  if (family == "heat") {
    double rho = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), rho);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) throw fail();
    return heat_kernel(rho, truncation);
  }
  if (family == "vp" || family == "char") {
    int n = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), n);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) throw fail();
    return family == "vp" ? vp_kernel(n) : characteristic_kernel(n);
  }
  throw std::invalid_argument("kernel spec '" + std::string(text) +
                              "': unknown family (expected heat, vp or char)");
}

ZonalSpectrumd heat_coefficients(double rho, int L) {
  if (!(rho > 0)) throw std::invalid_argument("heat_coefficients: rho must be positive");
  if (L < 0) throw std::invalid_argument("heat_coefficients: negative degree");
  Eigen::VectorXd a(L + 1);
  for (int l = 0; l <= L; ++l) a[l] = std::exp(-double(l) * (l + 1) * rho);
  return ZonalSpectrumd(std::move(a));
}

ZonalSpectrumd vp_coefficients(int kappa, int L) {
  if (kappa < 0) throw std::invalid_argument("vp_coefficients: kappa must be nonnegative");
  if (L < 0) throw std::invalid_argument("vp_coefficients: negative degree");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(L + 1);
  const double log_norm = log_binomial(2 * kappa + 1, kappa);
  for (int l = 0; l <= std::min(kappa, L); ++l) {
    a[l] = std::exp(log_binomial(2 * kappa + 1, kappa - l) - log_norm);
  }
  a[0] = 1.0;
  return ZonalSpectrumd(std::move(a));
}

ZonalSpectrumd characteristic_coefficients(int Lc, int L) {
  if (Lc < 0 || L < 0) throw std::invalid_argument("characteristic_coefficients: negative degree");
  Eigen::VectorXd a = Eigen::VectorXd::Zero(L + 1);
  a.head(std::min(Lc, L) + 1).setOnes();
  return ZonalSpectrumd(std::move(a));
}

ZonalSpectrumd characteristic_coefficients(int Lc) { return characteristic_coefficients(Lc, Lc); }

ZonalSpectrumd kernel_coefficients(const KernelSpec& spec, int L) {
  validate(spec);
  return std::visit(Overloaded{[&](const Heat& h) { return heat_coefficients(h.rho, L); },
                               [&](const VallePoussin& v) { return vp_coefficients(v.kappa, L); },
                               [&](const Characteristic& c) {
                                 return characteristic_coefficients(c.L, L);
                               }},
                    spec.family);
}

int heat_series_degree(double rho, int L) {
  for (int l = 1; l <= L; ++l) {
    if ((2.0 * l + 1.0) * std::exp(-double(l) * (l + 1) * rho) < kSeriesCutoff) return l;
  }
  return L;
}

int kernel_bandlimit(const KernelSpec& spec) {
  return std::visit(Overloaded{[&](const Heat& h) { return heat_series_degree(h.rho, spec.truncation); },
                               [](const VallePoussin& v) { return v.kappa; },
                               [](const Characteristic& c) { return c.L; }},
                    spec.family);
}

ZonalSpectrumd kernel_series(const KernelSpec& spec) {
  return kernel_coefficients(spec, kernel_bandlimit(spec));
}

double evaluate_kernel(const KernelSpec& spec, double omega) {
  return zonal_synthesize(kernel_series(spec), omega);
}

int alpha_series_degree(double rho, int L) {
  if (!(rho > 0)) throw std::invalid_argument("alpha: rho must be positive");
  if (L < 1) throw std::invalid_argument("alpha: need at least degree 1");
  double sum = 0;
  for (int l = 1; l <= L; ++l) {
    const double lam = double(l) * (l + 1);
    const double term = (2.0 * l + 1.0) * (2.0 * l + 1.0) * lam * std::exp(-lam * rho);
    // Terms grow before they decay; only stop on the decaying side.
    if (sum > 0 && term < kSeriesCutoff * sum && lam * rho > 1.0) return l - 1;
    sum += term;
  }
  return L;
}

double alpha(double rho, int L) {
  const int top = alpha_series_degree(rho, L);
  double sum = 0;
  for (int l = 1; l <= top; ++l) {
    const double lam = double(l) * (l + 1);
    sum += (2.0 * l + 1.0) * (2.0 * l + 1.0) * lam * std::exp(-lam * rho);
  }
  return sum;
}

ZonalSpectrumd wavelet_coefficients(const WaveletFamily& w) {
  const int top = alpha_series_degree(w.rho, w.truncation);
  const double scale = 1.0 / std::sqrt(alpha(w.rho, w.truncation));
  Eigen::VectorXd a = Eigen::VectorXd::Zero(top + 1);
  for (int l = 1; l <= top; ++l) {
    const double lam = double(l) * (l + 1);
    a[l] = scale * std::sqrt(lam) * std::exp(-0.5 * lam * w.rho);
  }
  return ZonalSpectrumd(std::move(a));
}

AdmissibilityResidual admissibility_residual(double rho, int ell) {
  if (ell < 1) throw std::invalid_argument("admissibility_residual: identity fails at degree 0");
  if (!(rho > 0)) throw std::invalid_argument("admissibility_residual: rho must be positive");
  const double lam = double(ell) * (ell + 1);
  const double target = std::exp(-lam * rho);

  // Antiderivative -e^{-lam t} evaluated from rho to infinity.
  const double closed = 0.0 - (-std::exp(-lam * rho));

  using boost::math::quadrature::gauss_kronrod;
  const auto integrand = [lam](double t) { return lam * std::exp(-lam * t); };
  const double numeric = gauss_kronrod<double, 61>::integrate(
      integrand, rho, std::numeric_limits<double>::infinity(), 15, 1e-14);
  return {std::abs(closed - target), std::abs(numeric - target)};
}

double vp_closed_form(int kappa, double omega) {
  // Unit mass under the angle marginal (2/pi) sin^2(omega/2):
  // int_0^pi cos^{2k}(w/2) sin^2(w/2) dw = B(k + 1/2, 3/2).
  const double log_beta = std::lgamma(kappa + 0.5) + std::lgamma(1.5) - std::lgamma(kappa + 2.0);
  const double c = 0.5 * std::numbers::pi / std::exp(log_beta);
  return c * std::pow(std::cos(0.5 * omega), 2 * kappa);
}

ZonalMixture default_test_mixture() {
  const double pi = std::numbers::pi;
  const Rotationd r1 = from_axis_angle(Eigen::Vector3d(1, 0, 0), pi / 6);
  const Rotationd r2 = from_axis_angle(Eigen::Vector3d(0, 1, 0), 4 * pi / 9);
  return ZonalMixture(0.2, {{0.7, vp_coefficients(30, 30), inverse(r1)},
                            {0.1, vp_coefficients(45, 45), inverse(r2)}});
}

}  // namespace so3kde
