#include "so3kde/harmonics.hpp"

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "so3kde/quadrature.hpp"
#include "test_util.hpp"

namespace so3kde {
namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// Explicit Wigner sum in long double; an independent oracle for small degrees.
long double factorial(int n) {
  long double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double wigner_small_d_sum(int j, int mp, int m, double beta) {
  const long double c = std::cos(0.5L * beta), s = std::sin(0.5L * beta);
  long double sum = 0;
  const long double pre =
      std::sqrt(factorial(j + mp) * factorial(j - mp) * factorial(j + m) * factorial(j - m));
  for (int k = 0; k <= 2 * j; ++k) {
    if (j + m - k < 0 || mp - m + k < 0 || j - mp - k < 0) continue;
    const long double den =
        factorial(j + m - k) * factorial(k) * factorial(mp - m + k) * factorial(j - mp - k);
    const long double sign = ((mp - m + k) % 2 == 0) ? 1.0L : -1.0L;
    sum += sign * pre / den * std::pow(c, 2 * j + m - mp - 2 * k) * std::pow(s, mp - m + 2 * k);
  }
  return static_cast<double>(sum);
}

TEST(Chebyshev, HandValues) {
  EXPECT_EQ(chebyshev_u(0, 0.37), 1.0);
  EXPECT_EQ(chebyshev_u(1, 0.5), 1.0);
  EXPECT_EQ(chebyshev_u(2, 0.0), -1.0);
  EXPECT_NEAR(chebyshev_u(3, 0.3), 8 * 0.027 - 4 * 0.3, 1e-15);
  EXPECT_THROW(chebyshev_u(-1, 0.1), std::invalid_argument);
}

TEST(Character, SpecialValues) {
  for (int l = 0; l <= 40; ++l) EXPECT_NEAR(character(l, 0.0), 2 * l + 1, 1e-12);
  EXPECT_NEAR(character(1, kPi), -1.0, 1e-14);
  EXPECT_NEAR(character(1, Rotationd::identity()), 3.0, 0.0);
}

TEST(Character, MatchesSineRatio) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double w = testing::uniform(rng, 0.05, kPi);
    const auto chi = characters(12, w);
    for (int l = 0; l <= 12; ++l) {
      ASSERT_NEAR(chi[l], std::sin((l + 0.5) * w) / std::sin(0.5 * w), 1e-10);
      ASSERT_EQ(chi[l], character(l, w));
    }
  }
}

TEST(Character, Orthogonality) {
  for (int l = 0; l <= 20; ++l) {
    for (int lp = 0; lp <= 20; ++lp) {
      const int n = 4 * (l + lp) + 24;
      const auto rule = gauss_legendre(n);
      double sum = 0;
      for (int k = 0; k < n; ++k) {
        const double w = kPi * (rule.nodes[k] + 1.0);  // map to [0, 2 pi]
        const double s = std::sin(0.5 * w);
        sum += rule.weights[k] * kPi * character(l, w) * character(lp, w) * s * s;
      }
      ASSERT_NEAR(sum / kPi, l == lp ? 1.0 : 0.0, 1e-10) << l << ", " << lp;
    }
  }
}

TEST(GaussLegendre, ThreePointRule) {
  const auto r = gauss_legendre(3);
  EXPECT_NEAR(r.nodes[0], -std::sqrt(0.6), 1e-15);
  EXPECT_EQ(r.nodes[1], 0.0);
  EXPECT_NEAR(r.weights[0], 5.0 / 9, 1e-15);
  EXPECT_NEAR(r.weights[1], 8.0 / 9, 1e-15);
}

TEST(GaussLegendre, PolynomialExactness) {
  for (int n : {1, 2, 5, 17, 50}) {
    const auto r = gauss_legendre(n);
    EXPECT_NEAR(r.weights.sum(), 2.0, 1e-13);
    for (int p = 0; p <= 2 * n - 1; ++p) {
      double q = 0;
      for (int k = 0; k < n; ++k) q += r.weights[k] * std::pow(r.nodes[k], p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      ASSERT_NEAR(q, exact, 1e-13) << n << " " << p;
    }
  }
}

TEST(WignerD, DegreeZero) {
  const auto d = wigner_d_matrix(0, EulerZYZd{1.0, 2.0, 3.0});
  ASSERT_EQ(d.rows(), 1);
  EXPECT_NEAR(std::abs(d(0, 0) - cd(1, 0)), 0.0, 1e-15);
}

TEST(WignerD, ZeroPolarAngleIsDiagonal) {
  const double phi = 0.7, psi = 2.1;
  for (int l : {1, 4, 9}) {
    const auto d = wigner_d_matrix(l, EulerZYZd{phi, 0.0, psi});
    for (int n = -l; n <= l; ++n) {
      for (int m = -l; m <= l; ++m) {
        const cd expected = (n == m) ? std::polar(1.0, -n * (phi + psi)) : cd(0);
        ASSERT_LE(std::abs(d(n + l, m + l) - expected), 1e-14);
      }
    }
  }
}

TEST(WignerD, MatchesExplicitWignerSum) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const double beta = testing::uniform(rng, 0, kPi);
    const WignerSmallD table(10, beta);
    for (int l = 0; l <= 10; ++l) {
      for (int n = -l; n <= l; ++n) {
        for (int m = -l; m <= l; ++m) {
          ASSERT_NEAR(table(l, n, m), wigner_small_d_sum(l, n, m, beta), 1e-12)
              << l << " " << n << " " << m << " beta=" << beta;
        }
      }
    }
  }
}

TEST(WignerD, SpinOneMatchesCartesianRotation) {
  // Spherical basis e_{+1} = -(x + i y)/sqrt2, e_0 = z, e_{-1} = (x - i y)/sqrt2.
  Eigen::Matrix3cd basis;  // columns e_{-1}, e_0, e_{+1}
  const double r2 = std::sqrt(0.5);
  basis.col(0) << cd(r2, 0), cd(0, -r2), cd(0, 0);
  basis.col(1) << cd(0, 0), cd(0, 0), cd(1, 0);
  basis.col(2) << cd(-r2, 0), cd(0, -r2), cd(0, 0);

  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const EulerZYZd e = testing::random_euler(rng);
    const Eigen::Matrix3cd r = to_matrix(from_euler_zyz(e)).cast<cd>();
    const Eigen::Matrix3cd expected = basis.adjoint() * r * basis;
    const Eigen::MatrixXcd d = wigner_d_matrix(1, e);
    ASSERT_LE((d - expected).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(WignerD, UnitaryRows) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Rotationd r = testing::random_rotation(rng);
    const auto mats = wigner_d_matrices(kDefaultMaxDegree, r);
    for (int l = 0; l <= kDefaultMaxDegree; ++l) {
      const Eigen::VectorXd rows = mats[l].rowwise().squaredNorm();
      const double tol = l <= 32 ? 1e-10 : 1e-9;
      ASSERT_LE((rows.array() - 1.0).abs().maxCoeff(), tol) << "degree " << l;
    }
  }
}

TEST(WignerD, TraceIsCharacter) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 50; ++trial) {
    const Rotationd r = testing::random_rotation(rng);
    const auto mats = wigner_d_matrices(40, r);
    const auto chi = characters(40, angle(r));
    for (int l = 0; l <= 40; ++l) {
      ASSERT_NEAR(mats[l].trace().real(), chi[l], 1e-9);
      ASSERT_NEAR(mats[l].trace().imag(), 0.0, 1e-9);
    }
  }
}

TEST(WignerD, Homomorphism) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 30; ++trial) {
    const Rotationd x = testing::random_rotation(rng);
    const Rotationd y = testing::random_rotation(rng);
    const auto dx = wigner_d_matrices(16, x);
    const auto dy = wigner_d_matrices(16, y);
    const auto dxy = wigner_d_matrices(16, x * y);
    for (int l = 0; l <= 16; ++l) {
      ASSERT_LE((dxy[l] - dx[l] * dy[l]).cwiseAbs().maxCoeff(), 1e-8) << l;
    }
  }
}

TEST(WignerD, DegreeOverflow) {
  EXPECT_THROW(wigner_d_matrix(kDefaultMaxDegree + 1, EulerZYZd{}), std::out_of_range);
  EXPECT_THROW(wigner_d_matrix(5, EulerZYZd{}, 4), std::out_of_range);
  EXPECT_THROW(WignerSmallD(-1, 0.3), std::invalid_argument);
}

TEST(Addition, EqualArguments) {
  std::mt19937_64 rng(17);
  const Rotationd x = testing::random_rotation(rng);
  for (int l = 0; l <= 6; ++l) EXPECT_NEAR(addition_evaluate(l, x, x), 2 * l + 1, 1e-11);
}

TEST(Addition, IdentityFirstArgument) {
  std::mt19937_64 rng(18);
  const Rotationd y = testing::random_rotation(rng);
  for (int l = 0; l <= 6; ++l) {
    EXPECT_NEAR(addition_evaluate(l, Rotationd::identity(), y), character(l, y), 1e-11);
  }
}

TEST(Addition, MatchesCharacterOfRelativeRotation) {
  std::mt19937_64 rng(19);
  for (int i = 0; i < 1000; ++i) {
    const Rotationd x = testing::random_rotation(rng);
    const Rotationd y = testing::random_rotation(rng);
    const int l = i % 11;
    ASSERT_NEAR(addition_evaluate(l, x, y), character(l, compose(y, inverse(x))), 1e-9);
  }
}

}  // namespace
}  // namespace so3kde
