#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "so3kde/rotation.hpp"

namespace so3kde {

/// Largest degree accepted by the Wigner-D routines unless overridden.
inline constexpr int kDefaultMaxDegree = 128;

inline void check_degree(int ell, int max_degree = kDefaultMaxDegree) {
  if (ell < 0) throw std::invalid_argument("degree must be nonnegative");
  if (ell > max_degree) {
    throw std::out_of_range("degree " + std::to_string(ell) + " exceeds configured limit " +
                            std::to_string(max_degree));
  }
}

/// Chebyshev polynomial of the second kind, U_n(t), by forward recurrence.
template <typename Scalar>
Scalar chebyshev_u(int n, Scalar t) {
  if (n < 0) throw std::invalid_argument("chebyshev_u: negative order");
  Scalar prev = 1;
  if (n == 0) return prev;
  Scalar cur = Scalar(2) * t;
  for (int k = 1; k < n; ++k) {
    const Scalar next = Scalar(2) * t * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Characters chi^0 .. chi^L at rotation angle omega, chi^l = U_{2l}(cos(omega/2)).
/// No removable singularity at omega = 0.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> characters(int L, Scalar omega) {
  if (L < 0) throw std::invalid_argument("characters: negative degree");
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> chi(L + 1);
  const Scalar t = std::cos(omega / Scalar(2));
  const Scalar two_t = Scalar(2) * t;
  Scalar u_even = 1;  // U_{2l}
  Scalar u_odd = two_t;  // U_{2l+1}
  chi[0] = u_even;
  for (int l = 1; l <= L; ++l) {
    u_even = two_t * u_odd - u_even;
    u_odd = two_t * u_even - u_odd;
    chi[l] = u_even;
  }
  return chi;
}

template <typename Scalar>
Scalar character(int ell, Scalar omega) {
  if (ell < 0) throw std::invalid_argument("character: negative degree");
  return chebyshev_u(2 * ell, std::cos(omega / Scalar(2)));
}

template <typename Scalar>
Scalar character(int ell, const Rotation<Scalar>& r) {
  return character(ell, angle(r));
}

/// Table of Wigner small-d values d^l_{nm}(beta) for all l <= L at a fixed
/// polar angle. Entry (n + l, m + l) of degree_matrix(l) holds d^l_{nm}.
///
/// Seeds at l = max(|n|,|m|) are products of half-angle powers (evaluated in
/// log space), then the three-term recurrence in l carries each (n, m) column
/// up to L. Convention: d^l_{nm}(beta) = <l n| exp(-i beta J_y) |l m>, so
/// D^l_{nm}(phi, theta, psi) = exp(-i n phi) d^l_{nm}(theta) exp(-i m psi)
/// is a unitary representation for R = Rz(phi) Ry(theta) Rz(psi).
class WignerSmallD {
 public:
  WignerSmallD() = default;
  WignerSmallD(int L, double beta, int max_degree = kDefaultMaxDegree);

  int degree() const { return static_cast<int>(tables_.size()) - 1; }
  double beta() const { return beta_; }

  double operator()(int ell, int n, int m) const { return tables_[ell](n + ell, m + ell); }
  const Eigen::MatrixXd& degree_matrix(int ell) const { return tables_[ell]; }

 private:
  double beta_ = 0;
  std::vector<Eigen::MatrixXd> tables_;
};

/// (2l+1) x (2l+1) Wigner-D matrix; rows and columns indexed by n, m + l.
Eigen::MatrixXcd wigner_d_matrix(int ell, const EulerZYZd& e, int max_degree = kDefaultMaxDegree);
Eigen::MatrixXcd wigner_d_matrix(int ell, const Rotationd& r, int max_degree = kDefaultMaxDegree);

/// All Wigner-D matrices of degree 0..L at one rotation, sharing one small-d table.
std::vector<Eigen::MatrixXcd> wigner_d_matrices(int L, const Rotationd& r,
                                                int max_degree = kDefaultMaxDegree);

/// sum_{n,m} conj(D^l_{nm}(x)) D^l_{nm}(y), evaluated as a direct double sum.
/// Equals chi^l(x^-1 y); the imaginary part is dropped.
double addition_evaluate(int ell, const Rotationd& x, const Rotationd& y,
                         int max_degree = kDefaultMaxDegree);

}  // namespace so3kde
