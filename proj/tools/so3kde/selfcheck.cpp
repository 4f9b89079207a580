#include "selfcheck.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>

#include "so3kde/estimators.hpp"
#include "so3kde/harmonics.hpp"
#include "so3kde/kernels.hpp"
#include "so3kde/sampling.hpp"
#include "so3kde/transform.hpp"

namespace so3kde::app {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBump = 1e-3;

struct Check {
  std::string name;
  double tolerance;
  std::function<double(RandomStream&, bool perturb)> run;
};

// Haar inner products <chi^l, chi^l'> by Gauss-Chebyshev (second kind) in
// c = cos(w/2): exact for the degree-4*20 polynomial integrands.
double character_orthogonality(RandomStream&, bool perturb) {
  const int L = 20, n = 2 * L + 2;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(L + 1, L + 1);
  for (int k = 1; k <= n; ++k) {
    const double a = kPi * k / (n + 1);
    const double w = kPi / (n + 1) * std::sin(a) * std::sin(a);
    // chi^l is even in c, so nodes with c < 0 map to |c|.
    const Eigen::VectorXd chi = characters(L, 2 * std::acos(std::abs(std::cos(a))));
    gram += 2 / kPi * w * chi * chi.transpose();
  }
  if (perturb) gram(1, 1) += kBump;
  return (gram - Eigen::MatrixXd::Identity(L + 1, L + 1)).cwiseAbs().maxCoeff();
}

double wigner_unitarity(RandomStream& rng, bool perturb) {
  double err = 0;
  for (int s = 0; s < 20; ++s) {
    auto d = wigner_d_matrices(32, draw_uniform(rng));
    if (perturb && s == 0) d[3](0, 0) += kBump;
    for (int l = 0; l <= 32; ++l) {
      const auto I = Eigen::MatrixXcd::Identity(2 * l + 1, 2 * l + 1);
      err = std::max(err, (d[l] * d[l].adjoint() - I).cwiseAbs().maxCoeff());
    }
  }
  return err;
}

// D(gh) = D(g) D(h) and sum conj(D(x)) D(y) = chi(x^-1 y).
double addition_theorem(RandomStream& rng, bool perturb) {
  double err = 0;
  for (int s = 0; s < 10; ++s) {
    const auto g = draw_uniform(rng), h = draw_uniform(rng);
    const auto dg = wigner_d_matrices(20, g), dh = wigner_d_matrices(20, h), dgh = wigner_d_matrices(20, compose(g, h));
    for (int l = 0; l <= 20; ++l) {
      Eigen::MatrixXcd prod = dg[l] * dh[l];
      if (perturb && s == 0 && l == 2) prod(1, 1) += kBump;
      err = std::max(err, (dgh[l] - prod).cwiseAbs().maxCoeff());
      err = std::max(err, std::abs(addition_evaluate(l, g, h) - character(l, compose(inverse(g), h))));
    }
  }
  return err;
}

double heat_semigroup(RandomStream&, bool perturb) {
  double err = 0;
  for (double rho : {1e-3, 0.0625, 0.5}) {
    for (double sigma : {2e-3, 0.125, 1.0}) {
      auto prod = zonal_convolve(heat_coefficients(rho, 128), heat_coefficients(sigma, 128));
      if (perturb) prod.coeffs()[1] += kBump;
      err = std::max(err, (prod.coeffs() - heat_coefficients(rho + sigma, 128).coeffs()).cwiseAbs().maxCoeff());
    }
  }
  return err;
}

double admissibility(RandomStream&, bool perturb) {
  double err = 0;
  for (int l = 1; l <= 20; ++l) {
    for (double rho : {std::ldexp(1.0, -9), 0.0625, 0.5, 2.0}) {
      const auto r = admissibility_residual(rho, l);
      err = std::max({err, r.closed_form, r.quadrature});
    }
  }
  return perturb ? err + kBump : err;
}

double wavelet_unit_norm(RandomStream&, bool perturb) {
  double err = 0;
  for (int j = 0; j <= 9; ++j) {
    auto psi = wavelet_coefficients({std::ldexp(1.0, -j)});
    if (perturb && j == 0) psi.coeffs()[1] += kBump;
    err = std::max(err, std::abs(zonal_energy(psi) - 1));
  }
  return err;
}

// Random real degree-10 function: grid integral of f^2 against sum (2l+1) |F|^2.
double parseval(RandomStream& rng, bool perturb) {
  const int L = 10;
  const QuadratureGrid grid(L);
  Eigen::VectorXd noise(Eigen::Index(grid.size()));
  for (auto& v : noise) v = rng.uniform() - 0.5;
  auto F = forward(noise, grid);
  const Eigen::VectorXd f = synthesize_on_grid(F, grid);
  if (perturb) F[2](0, 0) += kBump;
  double spectral = 0;
  for (int l = 0; l <= L; ++l) spectral += (2.0 * l + 1) * F[l].squaredNorm();
  const double spatial = integrate(grid, f.array().square().matrix());
  return std::abs(spectral - spatial) / spatial;
}

double distance_metric(RandomStream& rng, bool perturb) {
  double err = 0;
  for (int s = 0; s < 10000; ++s) {
    const auto a = draw_uniform(rng), b = draw_uniform(rng), c = draw_uniform(rng);
    const double ab = distance(a, b), bc = distance(b, c), ac = distance(a, c);
    err = std::max({err, distance(a, a), std::abs(ab - distance(b, a)), ac - ab - bc, -ab, ab - kPi});
    // Left and right invariance.
    err = std::max(err, std::abs(distance(compose(c, a), compose(c, b)) - ab));
    err = std::max(err, std::abs(distance(compose(a, c), compose(b, c)) - ab));
  }
  return perturb ? err + kBump : err;
}

double grid_exactness(RandomStream&, bool perturb) {
  const double e = grid_orthogonality_error(QuadratureGrid(8), 8);
  return perturb ? e + kBump : e;
}

double characteristic_paths(RandomStream& rng, bool perturb) {
  const auto s = sample_mixture(default_test_mixture(), 50, rng.next());
  const int L = 7;
  auto phi = characteristic_spectrum(s, L);
  FullSpectrum F = phi.spectrum();
  if (perturb) F[1](1, 1) += kBump;
  double err = 0;
  for (int i = 0; i < 10; ++i) {
    const auto x = draw_uniform(rng);
    const double direct = characteristic_density_estimate(s, L, x);
    err = std::max(err, std::abs(synthesize(F, x) - direct));
    err = std::max(err, std::abs(kernel_estimate(s, characteristic_kernel(L), x) - direct));
  }
  return err;
}

double wavelet_paths(RandomStream& rng, bool perturb) {
  const auto s = sample_mixture(default_test_mixture(), 20, rng.next());
  const HeatWavelet spec{0.1, 16};
  std::vector<Rotationd> xs{s[0], draw_uniform(rng), draw_uniform(rng)};
  const auto via = wavelet_density_estimate_via_scales(s, spec, xs);
  double err = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double direct = wavelet_density_estimate(s, spec, xs[i]) + (perturb ? kBump : 0.0);
    err = std::max(err, std::abs(via[i] - direct) / std::max(1.0, std::abs(direct)));
  }
  return err;
}

double coefficient_count(RandomStream&, bool perturb) {
  long closed = 0;
  for (int l = 0; l <= 49; ++l) closed += (2L * l + 1) * (2L * l + 1);
  const long count = long(FullSpectrum(49).coefficient_count());
  return std::abs(double(count - closed)) + std::abs(double(count - 166650)) + (perturb ? 1.0 : 0.0);
}

const std::vector<Check>& checks() {
  static const std::vector<Check> all{
      {"character_orthogonality", 1e-10, character_orthogonality},
      {"wigner_unitarity", 1e-10, wigner_unitarity},
      {"addition_theorem", 1e-9, addition_theorem},
      {"heat_semigroup", 1e-14, heat_semigroup},
      {"admissibility", 1e-10, admissibility},
      {"wavelet_unit_norm", 1e-10, wavelet_unit_norm},
      {"parseval_quadrature", 1e-8, parseval},
      {"distance_metric", 1e-12, distance_metric},
      {"grid_exactness", 1e-12, grid_exactness},
      {"characteristic_paths", 1e-9, characteristic_paths},
      {"wavelet_paths", 1e-4, wavelet_paths},
      {"coefficient_count", 0.0, coefficient_count},
  };
  return all;
}

}  // namespace

std::vector<std::string> selfcheck_names() {
  std::vector<std::string> out;
  for (const auto& c : checks()) out.push_back(c.name);
  return out;
}

std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& options) {
  std::vector<CheckResult> out;
  std::uint64_t stream = 0;
  for (const auto& c : checks()) {
    RandomStream rng(options.seed, stream++);
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    r.name = c.name;
    r.tolerance = c.tolerance;
    r.error = c.run(rng, options.perturb == c.name);
    r.passed = r.error <= c.tolerance;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.push_back(r);
  }
  return out;
}

void print_check_table(std::ostream& os, const std::vector<CheckResult>& results) {
  os << std::left << std::setw(26) << "check" << std::setw(13) << "error" << std::setw(13) << "tolerance"
     << std::setw(9) << "seconds" << "status\n";
  for (const auto& r : results) {
    os << std::left << std::setw(26) << r.name << std::setw(13) << std::setprecision(3) << std::scientific
       << r.error << std::setw(13) << r.tolerance << std::setw(9) << std::fixed << std::setprecision(2) << r.seconds
       << (r.passed ? "PASS" : "FAIL") << '\n';
  }
  os << std::defaultfloat;
}

}  // namespace so3kde::app
