#pragma once

#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace so3kde {

/// ZYZ Euler angles: R = Rz(phi) Ry(theta) Rz(psi).
/// phi, psi in [0, 2pi), theta in [0, pi].
template <typename Scalar>
struct EulerZYZ {
  Scalar phi{0};
  Scalar theta{0};
  Scalar psi{0};
};

/// Unit rotation axis and angle in [0, pi].
template <typename Scalar>
struct AxisAngle {
  Eigen::Matrix<Scalar, 3, 1> axis{Eigen::Matrix<Scalar, 3, 1>::UnitZ()};
  Scalar angle{0};
};

/// An element of SO(3), stored as a canonical unit quaternion.
///
/// The double cover is resolved by requiring w >= 0, and when w == 0 the first
/// nonzero of (x, y, z) is positive. Every constructor and group operation
/// renormalizes and re-canonicalizes, so the invariants survive long chains of
/// compositions.
template <typename Scalar>
class Rotation {
 public:
  using Quaternion = Eigen::Quaternion<Scalar>;
  using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
  using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

  Rotation() : q_(Quaternion::Identity()) {}

  /// Normalizes and canonicalizes q. Throws std::invalid_argument for a
  /// (numerically) zero quaternion.
  explicit Rotation(const Quaternion& q) : q_(q) {
    const Scalar n = q_.norm();
    if (!(n > std::numeric_limits<Scalar>::min()) || !std::isfinite(n)) {
      throw std::invalid_argument("Rotation: quaternion has zero or non-finite norm");
    }
    q_.coeffs() /= n;
    canonicalize();
  }

  static Rotation identity() { return Rotation(); }

  static Rotation from_wxyz(Scalar w, Scalar x, Scalar y, Scalar z) {
    return Rotation(Quaternion(w, x, y, z));
  }

  const Quaternion& quaternion() const { return q_; }
  Scalar w() const { return q_.w(); }
  Scalar x() const { return q_.x(); }
  Scalar y() const { return q_.y(); }
  Scalar z() const { return q_.z(); }

  Matrix3 matrix() const { return q_.toRotationMatrix(); }

  Rotation operator*(const Rotation& other) const { return Rotation(q_ * other.q_); }

  /// Conjugate of a unit quaternion; canonical form is preserved up to the
  /// w == 0 tie-break, which the constructor re-applies.
  Rotation inverse() const { return Rotation(q_.conjugate()); }

  template <typename Other>
  Rotation<Other> cast() const {
    return Rotation<Other>(q_.template cast<Other>());
  }

 private:
  void canonicalize() {
    auto& c = q_.coeffs();  // Eigen storage order: x, y, z, w
    bool flip = false;
    if (c[3] < 0) {
      flip = true;
    } else if (c[3] == 0) {
      for (int i = 0; i < 3; ++i) {
        if (c[i] != 0) {
          flip = c[i] < 0;
          break;
        }
      }
    }
    if (flip) c = -c;
  }

  Quaternion q_;
};

using Rotationd = Rotation<double>;
using EulerZYZd = EulerZYZ<double>;
using AxisAngled = AxisAngle<double>;

namespace detail {

template <typename Scalar>
Scalar wrap_two_pi(Scalar a) {
  const Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  a = std::fmod(a, two_pi);
  if (a < 0) a += two_pi;
  if (a >= two_pi) a = 0;
  return a;
}

}  // namespace detail

template <typename Scalar>
Rotation<Scalar> compose(const Rotation<Scalar>& a, const Rotation<Scalar>& b) {
  return a * b;
}

template <typename Scalar>
Rotation<Scalar> inverse(const Rotation<Scalar>& a) {
  return a.inverse();
}

template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> to_matrix(const Rotation<Scalar>& r) {
  return r.matrix();
}

template <typename Scalar>
Rotation<Scalar> from_euler_zyz(const EulerZYZ<Scalar>& e) {
  using Q = Eigen::Quaternion<Scalar>;
  using AA = Eigen::AngleAxis<Scalar>;
  using V = Eigen::Matrix<Scalar, 3, 1>;
  const Q q = Q(AA(e.phi, V::UnitZ())) * Q(AA(e.theta, V::UnitY())) * Q(AA(e.psi, V::UnitZ()));
  return Rotation<Scalar>(q);
}

/// Inverse of from_euler_zyz. Uses the quaternion half-angle relations
///   w = cos(theta/2) cos((phi+psi)/2),  z = cos(theta/2) sin((phi+psi)/2),
///   y = sin(theta/2) cos((phi-psi)/2),  x = -sin(theta/2) sin((phi-psi)/2).
/// At theta in {0, pi} the in-plane angle goes to phi and psi = 0.
template <typename Scalar>
EulerZYZ<Scalar> to_euler_zyz(const Rotation<Scalar>& r) {
  const Scalar w = r.w(), x = r.x(), y = r.y(), z = r.z();
  const Scalar polar = std::hypot(x, y);
  const Scalar axial = std::hypot(w, z);
  const Scalar eps = Scalar(16) * std::numeric_limits<Scalar>::epsilon();

  EulerZYZ<Scalar> e;
  if (polar <= eps) {
    e.theta = 0;
    e.phi = detail::wrap_two_pi(Scalar(2) * std::atan2(z, w));
    e.psi = 0;
  } else if (axial <= eps) {
    e.theta = std::numbers::pi_v<Scalar>;
    e.phi = detail::wrap_two_pi(Scalar(2) * std::atan2(-x, y));
    e.psi = 0;
  } else {
    const Scalar sum = std::atan2(z, w);    // (phi + psi) / 2
    const Scalar diff = std::atan2(-x, y);  // (phi - psi) / 2
    e.theta = Scalar(2) * std::atan2(polar, axial);
    e.phi = detail::wrap_two_pi(sum + diff);
    e.psi = detail::wrap_two_pi(sum - diff);
  }
  return e;
}

/// Requires a nonzero axis; the axis is normalized.
template <typename Scalar>
Rotation<Scalar> from_axis_angle(const AxisAngle<Scalar>& a) {
  const Scalar n = a.axis.norm();
  if (!(n > 0)) throw std::invalid_argument("from_axis_angle: zero axis");
  const Scalar h = a.angle / Scalar(2);
  const Eigen::Matrix<Scalar, 3, 1> v = a.axis / n * std::sin(h);
  return Rotation<Scalar>::from_wxyz(std::cos(h), v.x(), v.y(), v.z());
}

template <typename Scalar>
Rotation<Scalar> from_axis_angle(const Eigen::Matrix<Scalar, 3, 1>& axis, Scalar angle) {
  return from_axis_angle(AxisAngle<Scalar>{axis, angle});
}

/// Rotation angle in [0, pi]. Stable at both ends of the range.
template <typename Scalar>
Scalar angle(const Rotation<Scalar>& r) {
  const Scalar v = std::sqrt(r.x() * r.x() + r.y() * r.y() + r.z() * r.z());
  return Scalar(2) * std::atan2(v, std::abs(r.w()));
}

/// The identity maps to angle 0 with axis (0, 0, 1).
template <typename Scalar>
AxisAngle<Scalar> to_axis_angle(const Rotation<Scalar>& r) {
  AxisAngle<Scalar> out;
  Eigen::Matrix<Scalar, 3, 1> v(r.x(), r.y(), r.z());
  const Scalar n = v.norm();
  out.angle = angle(r);
  if (n > 0) {
    // Canonical w >= 0 already puts the angle in [0, pi].
    out.axis = v / n;
  }
  return out;
}

/// Geodesic distance angle(b * a^-1); bi-invariant metric on SO(3).
template <typename Scalar>
Scalar distance(const Rotation<Scalar>& a, const Rotation<Scalar>& b) {
  return angle(b * a.inverse());
}

// --- text forms -----------------------------------------------------------

/// "w x y z" with 17 significant digits.
template <typename Scalar>
std::string to_string(const Rotation<Scalar>& r) {
  std::ostringstream os;
  os << std::setprecision(17) << r.w() << ' ' << r.x() << ' ' << r.y() << ' ' << r.z();
  return os.str();
}

/// Parses "w x y z" (whitespace or comma separated). Throws
/// std::invalid_argument when fewer than four numbers are present or the norm
/// deviates from 1 by more than norm_tolerance.
Rotationd parse_rotation(std::string_view text, double norm_tolerance = 1e-6);

/// "phi,theta,psi" with 17 significant digits.
std::string to_euler_csv_row(const EulerZYZd& e);
EulerZYZd parse_euler_csv_row(std::string_view row);

}  // namespace so3kde
