#include "so3kde/kernels.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <numbers>

namespace so3kde {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(HeatCoefficients, Values) {
  for (double rho : {0.01, 1.0, 7.0}) EXPECT_EQ(heat_coefficients(rho, 5)[0], 1.0);
  EXPECT_NEAR(heat_coefficients(std::log(2.0), 3)[1], 0.25, 1e-15);
  const auto far = heat_coefficients(200.0, 10);
  for (int l = 1; l <= 10; ++l) EXPECT_LT(far[l], 1e-100);
  EXPECT_THROW(heat_coefficients(0.0, 3), std::invalid_argument);
}

TEST(HeatCoefficients, SemigroupAndApproximateIdentity) {
  for (double r1 : {0.001, 0.05, 0.7}) {
    for (double r2 : {0.002, 0.3}) {
      const auto a = heat_coefficients(r1, 40), b = heat_coefficients(r2, 40);
      const auto c = heat_coefficients(r1 + r2, 40);
      EXPECT_LE((a.coeffs().cwiseProduct(b.coeffs()) - c.coeffs()).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
  for (int l = 0; l <= 30; ++l) {
    const double lam = double(l) * (l + 1);
    double prev = 2.0;
    for (double rho = 1e-6; rho < 1.5; rho *= 2) {
      const double a = heat_coefficients(rho, l)[l];
      EXPECT_LE(a, 1.0);
      if (l >= 1) {
        if (prev > 0) EXPECT_LT(a, prev);
        // -d/drho a = lam a, by central difference.
        const double h = std::min(1e-4 / lam, 0.5 * rho);
        const double da = (heat_coefficients(rho + h, l)[l] - heat_coefficients(rho - h, l)[l]) / (2 * h);
        EXPECT_NEAR(-da, lam * a, 1e-6 * lam * a + 1e-300);
      }
      prev = a;
    }
    EXPECT_NEAR(heat_coefficients(1e-12, l)[l], 1.0, 1e-8);
    if (l >= 1) EXPECT_LT(heat_coefficients(1e3, l)[l], 1e-300);
  }
}

TEST(VpCoefficients, Values) {
  EXPECT_EQ(vp_coefficients(0, 0).coeffs(), Eigen::VectorXd::Ones(1));
  const auto v1 = vp_coefficients(1, 3);
  EXPECT_EQ(v1[0], 1.0);
  EXPECT_NEAR(v1[1], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(v1[2], 0.0);
  EXPECT_EQ(v1[3], 0.0);

  // Log-factorial oracle by direct summation.
  auto log_fact = [](int n) {
    double s = 0;
    for (int k = 2; k <= n; ++k) s += std::log(double(k));
    return s;
  };
  const double log_c91_45 = log_fact(91) - log_fact(45) - log_fact(46);
  const auto v45 = vp_coefficients(45, 49);
  EXPECT_NEAR(std::log(v45[45]), -log_c91_45, 1e-10);
  for (int l = 46; l <= 49; ++l) EXPECT_EQ(v45[l], 0.0);
}

TEST(VpKernel, MatchesClosedForm) {
  for (int kappa : {1, 8, 17, 30, 45}) {
    const auto spec = vp_kernel(kappa);
    for (int i = 0; i <= 64; ++i) {
      const double w = kPi * i / 64;
      const double closed = vp_closed_form(kappa, w);
      EXPECT_NEAR(evaluate_kernel(spec, w), closed, 1e-8 * std::max(1.0, vp_closed_form(kappa, 0.0)))
          << kappa << " " << w;
    }
  }
  EXPECT_NEAR(evaluate_kernel(vp_kernel(1), 0.0), 4.0, 1e-14);
}

TEST(CharacteristicKernel, Values) {
  EXPECT_EQ(characteristic_coefficients(0).coeffs(), Eigen::VectorXd::Ones(1));
  EXPECT_NEAR(evaluate_kernel(characteristic_kernel(1), 0.0), 10.0, 1e-13);
  EXPECT_NEAR(evaluate_kernel(characteristic_kernel(1), kPi), -2.0, 1e-13);
  const auto c9 = characteristic_coefficients(9, 12);
  for (int l = 0; l <= 9; ++l) EXPECT_EQ(c9[l], 1.0);
  for (int l = 10; l <= 12; ++l) EXPECT_EQ(c9[l], 0.0);
}

TEST(Kernels, SignOnAngleGrid) {
  const int n = 4096;
  std::vector<KernelSpec> nonneg;
  for (int k : {1, 8, 17, 22, 29, 36, 43}) nonneg.push_back(vp_kernel(k));
  for (int j = 0; j <= 9; ++j) nonneg.push_back(heat_kernel(std::ldexp(1.0, -j)));
  for (const auto& spec : nonneg) {
    const auto s = kernel_series(spec);
    EXPECT_EQ(s[0], 1.0);
    double lo = 1e300;
    for (int i = 0; i < n; ++i) lo = std::min(lo, zonal_synthesize(s, kPi * i / (n - 1)));
    EXPECT_GE(lo, -1e-9) << to_string(spec);
  }
  for (int L = 1; L <= 9; ++L) {
    const auto s = kernel_series(characteristic_kernel(L));
    double lo = 1e300;
    for (int i = 0; i < n; ++i) lo = std::min(lo, zonal_synthesize(s, kPi * i / (n - 1)));
    EXPECT_LT(lo, 0.0) << L;
  }
}

TEST(Kernels, LargeRhoHeatIsFlat) {
  for (double w : {0.0, 0.4, kPi}) EXPECT_NEAR(evaluate_kernel(heat_kernel(60.0), w), 1.0, 1e-14);
}

TEST(Kernels, SeriesTruncationRule) {
  const int top = heat_series_degree(0.5, 128);
  EXPECT_LT((2.0 * top + 1) * std::exp(-0.5 * top * (top + 1)), kSeriesCutoff);
  EXPECT_GE((2.0 * (top - 1) + 1) * std::exp(-0.5 * (top - 1) * top), kSeriesCutoff);
  EXPECT_EQ(heat_series_degree(1e-6, 40), 40);
  EXPECT_EQ(kernel_bandlimit(vp_kernel(30)), 30);
  EXPECT_EQ(kernel_bandlimit(characteristic_kernel(5)), 5);
}

TEST(KernelSpec, ParseAndFormat) {
  const auto h = parse_kernel_spec("heat:0.0625");
  EXPECT_EQ(family_name(h), "heat");
  EXPECT_EQ(bandwidth(h), 0.0625);
  EXPECT_EQ(to_string(h), "heat:0.0625");
  EXPECT_EQ(to_string(parse_kernel_spec("vp:30")), "vp:30");
  EXPECT_EQ(bandwidth(parse_kernel_spec("char:5")), 5.0);
  for (const char* bad : {"heat", "heat:", "heat:-1", "heat:0", "vp:1.5", "vp:-2", "gauss:3", "char:x"}) {
    EXPECT_THROW(parse_kernel_spec(bad), std::invalid_argument) << bad;
  }
  EXPECT_THROW(validate(KernelSpec{VallePoussin{10}, 5}), std::invalid_argument);
}

TEST(Alpha, LeadingTermForLargeRho) {
  for (double rho : {8.0, 10.0, 16.0}) {
    const double lead = 18.0 * std::exp(-2.0 * rho);
    EXPECT_NEAR(alpha(rho), lead, 1e-6 * lead);
  }
}

TEST(Alpha, HighPrecisionOracle) {
  using big = boost::multiprecision::cpp_bin_float_50;
  for (double rho : {1.0, 1.0 / 16, 1.0 / 512}) {
    big sum = 0;
    for (int l = 1; l <= 400; ++l) {
      const big lam = big(l) * (l + 1);
      sum += big(2 * l + 1) * (2 * l + 1) * lam * exp(-lam * big(rho));
    }
    const double ref = sum.convert_to<double>();
    EXPECT_NEAR(alpha(rho, 400), ref, 1e-13 * ref) << rho;
  }
}

TEST(Alpha, MonotoneDecreasing) {
  double prev = 1e300;
  for (double rho = 1e-3; rho < 20; rho *= 1.3) {
    const double a = alpha(rho);
    EXPECT_LT(a, prev);
    prev = a;
  }
}

TEST(WaveletCoefficients, UnitNormAndRatios) {
  for (double rho : {1.0 / 16, 0.5, 1.0, 1.0 / 512, 3.0}) {
    const auto w = wavelet_coefficients({rho});
    EXPECT_EQ(w[0], 0.0);
    EXPECT_NEAR(zonal_energy(w), 1.0, 1e-10) << rho;
    EXPECT_NEAR(w[2] / w[1], std::sqrt(3.0) * std::exp(-2.0 * rho), 1e-13);
  }
}

TEST(Admissibility, Residuals) {
  const auto r = admissibility_residual(0.5, 1);
  EXPECT_EQ(r.closed_form, 0.0);
  EXPECT_LE(r.quadrature, 1e-10);
  for (int l = 1; l <= 20; ++l) {
    for (double rho : {std::ldexp(1.0, -9), 0.0625, 0.5, 2.0}) {
      EXPECT_LE(admissibility_residual(rho, l).quadrature, 1e-10) << l << " " << rho;
    }
  }
  EXPECT_THROW(admissibility_residual(0.5, 0), std::invalid_argument);
}

TEST(TestMixture, Definition) {
  const auto m = default_test_mixture();
  EXPECT_EQ(m.uniform_weight(), 0.2);
  ASSERT_EQ(m.components().size(), 2u);
  EXPECT_EQ(m.components()[0].weight, 0.7);
  EXPECT_EQ(m.components()[0].kernel.degree(), 30);
  EXPECT_EQ(m.components()[1].kernel.degree(), 45);
  EXPECT_EQ(m.bandlimit(), 45);
}

}  // namespace
}  // namespace so3kde
