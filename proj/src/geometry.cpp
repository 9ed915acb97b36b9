// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#include "mapalign/geometry.hpp"

#include <cmath>
#include <vector>

namespace mapalign {

namespace {
constexpr double kOrthoTol = 1e-10;
}

Rotation::Rotation(const Mat3& m) : m_(m) {
  const double ortho = (m.transpose() * m - Mat3::Identity()).norm();
  if (ortho > kOrthoTol)
    throw GeometryError("rotation matrix is not orthonormal (|R^T R - I|_F = " +
                        std::to_string(ortho) + ")");
  const double det = m.determinant();
  if (std::abs(det - 1.0) > kOrthoTol)
    throw GeometryError("rotation matrix determinant is " + std::to_string(det));
}

Rotation Rotation::from_quaternion(double w, double x, double y, double z) {
  const double n = std::sqrt(w * w + x * x + y * y + z * z);
  if (n == 0.0) throw GeometryError("zero quaternion");
  w /= n; x /= n; y /= n; z /= n;
  Mat3 m;
  m << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
       2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
       2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return Rotation(m);
}

Rotation Rotation::from_euler_zyx(double a, double b, double c) {
  Mat3 rz, ry, rx;
  rz << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  ry << std::cos(b), 0, std::sin(b), 0, 1, 0, -std::sin(b), 0, std::cos(b);
  rx << 1, 0, 0, 0, std::cos(c), -std::sin(c), 0, std::sin(c), std::cos(c);
  return Rotation(Mat3(rz * ry * rx));
}

Rotation Rotation::nearest(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU(), v = svd.matrixV();
  Mat3 r = u * v.transpose();
  if (r.determinant() < 0) {
    u.col(2) *= -1.0;  // singular values sorted descending; flip the smallest
    r = u * v.transpose();
  }
  return Rotation(r);
}

RigidTransform invert(const RigidTransform& t) {
  const Mat3& j = reflection_j();
  Mat3 rt = t.rotation.matrix().transpose();
  RigidTransform out;
  if (t.reflected) {
    out.rotation = Rotation(Mat3(j * rt * j));
    out.translation = -(j * rt * t.translation);
    out.reflected = true;
  } else {
    out.rotation = Rotation(rt);
    out.translation = -(rt * t.translation);
    out.reflected = false;
  }
  return out;
}

double geodesic_distance(const Rotation& a, const Rotation& b) {
  const double tr = (a.matrix().transpose() * b.matrix()).trace();
  const double c = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
  return std::acos(c);
}

double geodesic_distance_up_to_symmetry(const Rotation& a, const Rotation& b,
                                        const std::vector<Rotation>& group) {
  double best = geodesic_distance(a, b);
  for (const Rotation& g : group)
    best = std::min(best, geodesic_distance(a, g * b));
  return best;
}

Eigen::Vector3d euler_zyx(const Rotation& r) {
  const Mat3& m = r.matrix();
  const double b = std::asin(std::clamp(-m(2, 0), -1.0, 1.0));
  double a, c;
  if (std::abs(m(2, 0)) < 1.0 - 1e-12) {
    a = std::atan2(m(1, 0), m(0, 0));
    c = std::atan2(m(2, 1), m(2, 2));
  } else {
    a = std::atan2(-m(0, 1), m(1, 1));  // gimbal lock: fold c into a
    c = 0.0;
  }
  return {a, b, c};
}

}  // namespace mapalign
