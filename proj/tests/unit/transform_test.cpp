#include "so3kde/transform.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <sstream>

#include "test_util.hpp"

namespace so3kde {
namespace {

constexpr double kPi = std::numbers::pi;

ZonalMixture small_mixture(std::mt19937_64& rng, int k1, int k2) {
  return ZonalMixture(0.3, {{0.4, vp_coefficients(k1, k1), testing::random_rotation(rng)},
                            {0.3, vp_coefficients(k2, k2), testing::random_rotation(rng)}});
}

TEST(QuadratureGrid, SmallGrids) {
  const QuadratureGrid g0(0);
  EXPECT_EQ(g0.n_theta(), 1);
  EXPECT_NEAR(integrate(g0, Eigen::VectorXd::Ones(Eigen::Index(g0.size()))), 1.0, 1e-15);

  const QuadratureGrid g1(1);
  const auto chi1 = sample_on_grid(g1, [](const Rotationd& r) { return character(1, r); });
  EXPECT_NEAR(integrate(g1, chi1), 0.0, 1e-14);
  const auto chi1sq = sample_on_grid(g1, [](const Rotationd& r) { return std::pow(character(1, r), 2); });
  EXPECT_NEAR(integrate(g1, chi1sq), 1.0, 1e-14);
}

TEST(QuadratureGrid, SizeAndLimits) {
  const QuadratureGrid g(49);
  EXPECT_GE(g.n_phi(), 100);
  EXPECT_GE(g.n_theta(), 50);
  EXPECT_GE(g.n_psi(), 100);
  EXPECT_GE(g.size(), 100u * 50u * 100u);
  EXPECT_NEAR(g.theta_weights().sum(), 1.0, 1e-14);
  EXPECT_THROW(QuadratureGrid(49, 1000), std::length_error);
  EXPECT_THROW(QuadratureGrid(-1), std::invalid_argument);
}

TEST(QuadratureGrid, OrthogonalityExactness) {
  for (int L = 0; L <= 8; ++L) EXPECT_LE(grid_orthogonality_error(QuadratureGrid(L), L), 1e-13) << L;
  EXPECT_LE(grid_orthogonality_error(QuadratureGrid(49), 10), 1e-12);
  // One degree past the grid the rule is no longer exact.
  EXPECT_GT(grid_orthogonality_error(QuadratureGrid(4), 5), 1e-6);
}

TEST(Forward, ConstantAndCharacter) {
  const QuadratureGrid g(6);
  const auto one = forward_function([](const Rotationd&) { return 1.0; }, g);
  EXPECT_NEAR(std::abs(one[0](0, 0) - 1.0), 0.0, 1e-14);
  for (int l = 1; l <= 6; ++l) EXPECT_LE(one[l].cwiseAbs().maxCoeff(), 1e-12);

  const auto chi3 = forward_function([](const Rotationd& r) { return character(3, r); }, g);
  for (int l = 0; l <= 6; ++l) {
    const Eigen::MatrixXcd expected =
        (l == 3) ? Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(7, 7) / 7.0)
                 : Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(2 * l + 1, 2 * l + 1));
    EXPECT_LE((chi3[l] - expected).cwiseAbs().maxCoeff(), 1e-12) << l;
  }
  EXPECT_THROW(forward(Eigen::VectorXd::Zero(3), g), std::invalid_argument);
  EXPECT_THROW(forward(Eigen::VectorXd::Zero(Eigen::Index(g.size())), g, 7), std::invalid_argument);
}

TEST(Forward, MatchesTranslatedSpectrum) {
  std::mt19937_64 rng(8);
  const QuadratureGrid g(10);
  const auto s = heat_coefficients(0.3, 10);
  const auto c = testing::random_rotation(rng);
  const auto f = forward_function([&](const Rotationd& x) { return zonal_synthesize(s, distance(c, x)); }, g);
  const auto expected = translated_spectrum(s, c, 10);
  for (int l = 0; l <= 10; ++l) EXPECT_LE((f[l] - expected[l]).cwiseAbs().maxCoeff(), 1e-12) << l;
}

TEST(Synthesize, UniformAndRoundTrip) {
  FullSpectrum u(0);
  u[0](0, 0) = 1.0;
  std::mt19937_64 rng(21);
  EXPECT_NEAR(synthesize(u, testing::random_rotation(rng)), 1.0, 1e-15);

  const QuadratureGrid g(8);
  const auto m = small_mixture(rng, 5, 8);
  const auto values = sample_on_grid(g, [&](const Rotationd& x) { return mixture_evaluate(m, x); });
  const auto f = forward(values, g);
  EXPECT_LE((synthesize_on_grid(f, g) - values).cwiseAbs().maxCoeff(), 1e-9);
  for (int i = 0; i < 50; ++i) {
    const auto x = testing::random_rotation(rng);
    EXPECT_NEAR(synthesize(f, x), mixture_evaluate(m, x), 1e-9);
  }
  EXPECT_LE(synthesis_imaginary_residue(f, g), 1e-9);
  EXPECT_LE(std::abs(synthesize_complex(f, testing::random_rotation(rng)).imag()), 1e-9);
}

TEST(Synthesize, TestMixtureAtFullBandlimit) {
  std::mt19937_64 rng(4);
  const QuadratureGrid g(49);
  const auto m = default_test_mixture();
  const auto values = sample_on_grid(g, [&](const Rotationd& x) { return mixture_evaluate(m, x); });
  EXPECT_NEAR(integrate(g, values), 1.0, 1e-9);
  const auto f = forward(values, g);
  EXPECT_EQ(f.coefficient_count(), 166650u);
  const auto exact = mixture_spectrum(m, 49);
  double err = 0;
  for (int l = 0; l <= 49; ++l) err = std::max(err, (f[l] - exact[l]).cwiseAbs().maxCoeff());
  EXPECT_LE(err, 1e-11);
  for (int i = 0; i < 100; ++i) {
    const auto x = testing::random_rotation(rng);
    EXPECT_NEAR(synthesize(f, x), mixture_evaluate(m, x), 1e-6);
  }
  EXPECT_LE(synthesis_imaginary_residue(f, g), 1e-9);
}

TEST(WaveletTransform, UniformVanishes) {
  const QuadratureGrid g(6);
  std::mt19937_64 rng(2);
  const double wt = wavelet_transform([](const Rotationd&) { return 1.0; }, WaveletFamily{0.1},
                                      testing::random_rotation(rng), g);
  EXPECT_NEAR(wt, 0.0, 1e-14);
}

TEST(WaveletTransform, HeatKernelAtIdentity) {
  const double sigma = 0.1, rho = 0.05;
  const int L = 20;
  const QuadratureGrid g(L);
  const auto heat = heat_coefficients(sigma, L);
  const auto psi = wavelet_coefficients({rho});
  const double wt = wavelet_transform([&](const Rotationd& y) { return zonal_synthesize(heat, angle(y)); },
                                      WaveletFamily{rho}, Rotationd::identity(), g);
  double expected = 0;
  for (int l = 0; l <= L; ++l) expected += (2.0 * l + 1) * (2.0 * l + 1) * heat[l] * psi[l];
  EXPECT_NEAR(wt, expected, 1e-10 * std::abs(expected));
}

TEST(WaveletTransform, QuadratureMatchesFourierSide) {
  std::mt19937_64 rng(31);
  const auto m = small_mixture(rng, 6, 9);
  const QuadratureGrid g(9);
  const WaveletFamily w{0.02};
  const auto f = mixture_spectrum(m, 9);
  const auto psi = wavelet_coefficients(w);
  for (int i = 0; i < 5; ++i) {
    const auto x = testing::random_rotation(rng);
    const double quad = wavelet_transform([&](const Rotationd& y) { return mixture_evaluate(m, y); }, w, x, g);
    // sum_l (2l+1) Psi^l times the per-component synthesis at x.
    double fourier = 0;
    for (const auto& c : m.components()) {
      const double om = distance(c.center, x);
      const auto chi = characters(9, om);
      for (int l = 1; l <= 9; ++l) fourier += c.weight * (2.0 * l + 1) * psi[l] * c.kernel[l] * chi[l];
    }
    EXPECT_NEAR(quad, fourier, 1e-7);
    EXPECT_NEAR(synthesize(wavelet_transform_spectrum(f, w), x), fourier, 1e-10);
  }
}

TEST(WaveletTransform, Unitarity) {
  std::mt19937_64 rng(13);
  const int L = 6;
  const QuadratureGrid g(L);
  auto f1 = mixture_spectrum(small_mixture(rng, 4, 6), L);
  auto f2 = mixture_spectrum(small_mixture(rng, 3, 5), L);
  f1[0].setZero();
  f2[0].setZero();
  const double inner = integrate(g, synthesize_on_grid(f1, g).cwiseProduct(synthesize_on_grid(f2, g)));

  const auto scales = log_scale_grid(1e-7);
  double wt_inner = 0;
  for (Eigen::Index k = 0; k < scales.t.size(); ++k) {
    const WaveletFamily w{scales.t[k]};
    const auto a = wavelet_transform_on_grid(f1, w, g), b = wavelet_transform_on_grid(f2, w, g);
    wt_inner += scales.weights[k] * alpha(w.rho) * integrate(g, a.cwiseProduct(b));
  }
  EXPECT_NEAR(wt_inner, inner, 1e-4 * std::abs(inner));
}

TEST(ScaleGrid, Layout) {
  const auto s = log_scale_grid(std::ldexp(1.0, -9));
  EXPECT_EQ((s.t.size() - 1) % 2, 0);
  EXPECT_EQ(s.t[0], std::ldexp(1.0, -9));
  EXPECT_GE(s.t[s.t.size() - 1], -std::log(1e-12) / 2);
  EXPECT_NEAR(s.t[4], 2 * s.t[0], 1e-15);
  // Composite Simpson error for int e^u du is about h^4 / 180 relative.
  const double exact = s.t[s.t.size() - 1] - s.t[0];
  EXPECT_NEAR(s.weights.sum(), exact, 1e-5 * exact);
  EXPECT_THROW(log_scale_grid(0.0), std::invalid_argument);
}

TEST(WaveletInverse, UniformIsExact) {
  const QuadratureGrid g(4);
  const auto scales = log_scale_grid(1e-3);
  std::vector<Eigen::VectorXd> wt(std::size_t(scales.t.size()), Eigen::VectorXd::Zero(Eigen::Index(g.size())));
  const auto rec = wavelet_inverse(wt, scales, g);
  EXPECT_LE((rec.array() - 1.0).abs().maxCoeff(), 1e-14);
}

std::vector<Eigen::VectorXd> wavelet_coefficients_over(const FullSpectrum& f, const ScaleGrid& s,
                                                       const QuadratureGrid& g) {
  std::vector<Eigen::VectorXd> wt;
  for (Eigen::Index k = 0; k < s.t.size(); ++k) wt.push_back(wavelet_transform_on_grid(f, {s.t[k]}, g));
  return wt;
}

TEST(WaveletInverse, FourierSideIdentity) {
  std::mt19937_64 rng(41);
  const int L = 8;
  const QuadratureGrid g(L);
  const auto f = mixture_spectrum(small_mixture(rng, 5, 8), L);
  const double t_min = std::ldexp(1.0, -9);
  const auto scales = log_scale_grid(t_min);
  const auto rec = wavelet_inverse_spectrum(wavelet_coefficients_over(f, scales, g), scales, g);
  EXPECT_EQ(rec[0](0, 0), 1.0);
  for (int l = 1; l <= L; ++l) {
    const double lam = double(l) * (l + 1);
    const Eigen::MatrixXcd expected = f[l] * std::exp(-lam * t_min);
    EXPECT_LE((rec[l] - expected).cwiseAbs().maxCoeff(), 1e-6 * f[l].cwiseAbs().maxCoeff()) << l;
  }
}

TEST(WaveletInverse, ConvergesAsTMinShrinks) {
  std::mt19937_64 rng(43);
  const int L = 10;
  const QuadratureGrid g(L);
  const auto m = small_mixture(rng, 7, 10);
  const auto f = mixture_spectrum(m, L);
  const auto truth = sample_on_grid(g, [&](const Rotationd& x) { return mixture_evaluate(m, x); });
  double prev = 1e300;
  for (int j = 9; j <= 13; ++j) {
    const double t_min = std::ldexp(1.0, -j);
    const auto scales = log_scale_grid(t_min);
    const auto rec = wavelet_inverse(wavelet_coefficients_over(f, scales, g), scales, g);
    const double err = (rec - truth).cwiseAbs().maxCoeff();
    EXPECT_LT(err, prev);
    EXPECT_LT(err, 2000.0 * t_min) << j;
    if (prev < 1e300) EXPECT_GT(prev / err, 1.7) << j;
    prev = err;
  }
}

TEST(FullSpectrumCsv, RoundTripAndErrors) {
  std::mt19937_64 rng(3);
  const auto f = mixture_spectrum(small_mixture(rng, 2, 3), 3);
  std::stringstream ss;
  write_full_spectrum_csv(ss, f);
  const auto back = read_full_spectrum_csv(ss);
  ASSERT_EQ(back.bandlimit(), 3);
  for (int l = 0; l <= 3; ++l) EXPECT_EQ(back[l], f[l]);

  std::stringstream missing("ell,n,m,re,im\n0,0,0,1,0\n1,0,0,0.5,0\n");
  EXPECT_THROW(read_full_spectrum_csv(missing), std::invalid_argument);
  std::stringstream bad("ell,n,m,re,im\n1,2,0,1,0\n");
  EXPECT_THROW(read_full_spectrum_csv(bad), std::invalid_argument);
}

}  // namespace
}  // namespace so3kde
