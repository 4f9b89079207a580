#include "so3kde/harmonics.hpp"

#include <algorithm>
#include <cstdlib>

namespace so3kde {
namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// c^a s^b sqrt(C(2j, k)), with 0^0 = 1.
double half_angle_product(int two_j, int k, double log_c, double log_s, int a, int b) {
  if ((a > 0 && std::isinf(log_c)) || (b > 0 && std::isinf(log_s))) return 0.0;
  double log_v = 0.5 * log_binomial(two_j, k);
  if (a > 0) log_v += a * log_c;
  if (b > 0) log_v += b * log_s;
  return std::exp(log_v);
}

// d^M_{nm} with |n| = M >= |m|.
double seed_row_extreme(int M, int n, int m, double log_c, double log_s) {
  if (n == M) {
    const double v = half_angle_product(2 * M, M + m, log_c, log_s, M + m, M - m);
    return ((M - m) % 2 == 0) ? v : -v;
  }
  return half_angle_product(2 * M, M - m, log_c, log_s, M - m, M + m);
}

double seed(int n, int m, double log_c, double log_s) {
  if (std::abs(n) >= std::abs(m)) return seed_row_extreme(std::abs(n), n, m, log_c, log_s);
  // d_{nm} = (-1)^{n-m} d_{mn}
  const double v = seed_row_extreme(std::abs(m), m, n, log_c, log_s);
  return (std::abs(n - m) % 2 == 0) ? v : -v;
}

}  // namespace

WignerSmallD::WignerSmallD(int L, double beta, int max_degree) : beta_(beta) {
  check_degree(L, max_degree);
  tables_.resize(L + 1);
  for (int l = 0; l <= L; ++l) tables_[l].setZero(2 * l + 1, 2 * l + 1);

  const double c = std::cos(0.5 * beta);
  const double s = std::sin(0.5 * beta);
  const double log_c = c > 0 ? std::log(c) : -std::numeric_limits<double>::infinity();
  const double log_s = s > 0 ? std::log(s) : -std::numeric_limits<double>::infinity();
  const double x = std::cos(beta);

  for (int n = -L; n <= L; ++n) {
    for (int m = -L; m <= L; ++m) {
      const int M = std::max(std::abs(n), std::abs(m));
      double d_prev = 0.0;
      double d_cur = seed(n, m, log_c, log_s);
      tables_[M](n + M, m + M) = d_cur;
      const double nn = double(n) * n;
      const double mm = double(m) * m;
      for (int l = M; l < L; ++l) {
        const double lp1 = l + 1.0;
        const double norm_next = std::sqrt((lp1 * lp1 - nn) * (lp1 * lp1 - mm));
        const double shift = (l == 0) ? 0.0 : double(n) * m / (double(l) * lp1);
        const double a = lp1 * (2.0 * l + 1.0) / norm_next * (x - shift);
        const double b =
            (l == 0 || l == M)
                ? 0.0
                : lp1 * std::sqrt((double(l) * l - nn) * (double(l) * l - mm)) / (l * norm_next);
        const double d_next = a * d_cur - b * d_prev;
        d_prev = d_cur;
        d_cur = d_next;
        tables_[l + 1](n + l + 1, m + l + 1) = d_cur;
      }
    }
  }
}

Eigen::MatrixXcd wigner_d_matrix(int ell, const EulerZYZd& e, int max_degree) {
  check_degree(ell, max_degree);
  const WignerSmallD d(ell, e.theta, max_degree);
  const int size = 2 * ell + 1;
  Eigen::MatrixXcd out(size, size);
  for (int n = -ell; n <= ell; ++n) {
    const std::complex<double> left = std::polar(1.0, -n * e.phi);
    for (int m = -ell; m <= ell; ++m) {
      out(n + ell, m + ell) = left * d(ell, n, m) * std::polar(1.0, -m * e.psi);
    }
  }
  return out;
}

Eigen::MatrixXcd wigner_d_matrix(int ell, const Rotationd& r, int max_degree) {
  return wigner_d_matrix(ell, to_euler_zyz(r), max_degree);
}

std::vector<Eigen::MatrixXcd> wigner_d_matrices(int L, const Rotationd& r, int max_degree) {
  check_degree(L, max_degree);
  const EulerZYZd e = to_euler_zyz(r);
  const WignerSmallD d(L, e.theta, max_degree);
  Eigen::VectorXcd left(2 * L + 1), right(2 * L + 1);
  for (int k = -L; k <= L; ++k) {
    left[k + L] = std::polar(1.0, -k * e.phi);
    right[k + L] = std::polar(1.0, -k * e.psi);
  }
  std::vector<Eigen::MatrixXcd> out(L + 1);
  for (int l = 0; l <= L; ++l) {
    const int size = 2 * l + 1;
    out[l] = left.segment(L - l, size).asDiagonal() * d.degree_matrix(l).cast<std::complex<double>>() *
             right.segment(L - l, size).asDiagonal();
  }
  return out;
}

double addition_evaluate(int ell, const Rotationd& x, const Rotationd& y, int max_degree) {
  const Eigen::MatrixXcd dx = wigner_d_matrix(ell, x, max_degree);
  const Eigen::MatrixXcd dy = wigner_d_matrix(ell, y, max_degree);
  std::complex<double> sum = 0;
  for (Eigen::Index i = 0; i < dx.rows(); ++i) {
    for (Eigen::Index j = 0; j < dx.cols(); ++j) sum += std::conj(dx(i, j)) * dy(i, j);
  }
  return sum.real();
}

}  // namespace so3kde
