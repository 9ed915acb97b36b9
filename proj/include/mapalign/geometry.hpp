// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

namespace mapalign {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Proper rotation (orthonormal, det = +1). Construction validates the
/// invariants to 1e-10 and throws GeometryError on failure.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}
  explicit Rotation(const Mat3& m);

  /// Unit quaternion (w,x,y,z) to rotation matrix. The quaternion is
  /// normalized internally.
  static Rotation from_quaternion(double w, double x, double y, double z);

  /// R_z(a)*R_y(b)*R_x(c).
  static Rotation from_euler_zyx(double a, double b, double c);

  /// Nearest rotation to an arbitrary matrix: SVD polar factor with the
  /// smallest singular direction flipped if det would be -1.
  static Rotation nearest(const Mat3& m);

  const Mat3& matrix() const { return m_; }
  Vec3 col(int i) const { return m_.col(i); }
  Vec3 viewing_direction() const { return m_.col(2); }

  Rotation transpose() const { return Rotation(Mat3(m_.transpose())); }
  Rotation operator*(const Rotation& o) const { return Rotation(Mat3(m_ * o.m_)); }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

  bool isApprox(const Rotation& o, double tol = 1e-12) const {
    return (m_ - o.m_).norm() <= tol;
  }

 private:
  Mat3 m_;
};

/// z-flip reflection diag(1,1,-1). Not a Rotation (det = -1).
inline const Mat3& reflection_j() {
  static const Mat3 j = (Mat3() << 1, 0, 0, 0, 1, 0, 0, 0, -1).finished();
  return j;
}

/// Rigid motion in the map-generation sense: out(r) = in(R * J^u * r - t).
struct RigidTransform {
  Rotation rotation;
  Vec3 translation = Vec3::Zero();
  bool reflected = false;
};

/// Transform T' with apply(apply(v, T), T') == v up to interpolation.
RigidTransform invert(const RigidTransform& t);

/// Angle of R1^T R2 in radians.
double geodesic_distance(const Rotation& a, const Rotation& b);

/// Smallest geodesic distance to g*b over the group elements g.
double geodesic_distance_up_to_symmetry(const Rotation& a, const Rotation& b,
                                        const std::vector<Rotation>& group);

/// Euler angles (a,b,c) with R = R_z(a)*R_y(b)*R_x(c).
Eigen::Vector3d euler_zyx(const Rotation& r);

}  // namespace mapalign
