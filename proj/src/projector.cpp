// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#include "mapalign/projector.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>

#include "mapalign/rng.hpp"

namespace mapalign {

ProjectionImage VolumeProjector::project(const Rotation& r) const {
  const int n = sampler_.n();
  std::vector<Complex> slice = sampler_.sample_slice(r);
  Image2D img = ifft2_centered_real(slice, n);
  const double scale = std::sqrt(static_cast<double>(n));
  for (double& x : img.data) x *= scale;
  return ProjectionImage{std::move(img), r};
}

ProjectionImage project(const Volume& v, const Rotation& r) {
  return VolumeProjector(v).project(r);
}

std::vector<Rotation> random_rotations(int count, std::uint64_t seed) {
  if (count < 1) throw GeometryError("random_rotations: count must be >= 1");
  Rng rng(seed);
  std::vector<Rotation> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    double q[4];
    double norm = 0.0;
    do {
      for (double& x : q) x = rng.normal();
      norm = q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3];
    } while (norm < 1e-12);
    out.push_back(Rotation::from_quaternion(q[0], q[1], q[2], q[3]));
  }
  return out;
}

namespace {

template <typename Emit>
void walk_grid(int L, Emit&& emit) {
  const int n1 = L / 4;
  for (int a = 0; a < n1; ++a) {
    const double tau = a * (std::numbers::pi / 2) / n1;
    const double st = std::sin(tau), ct = std::cos(tau);
    const int n2 = static_cast<int>(L / 2.0 * st);
    for (int b = 0; b < n2; ++b) {
      const double theta = b * std::numbers::pi / n2;
      const double sth = std::sin(theta), cth = std::cos(theta);
      const int n3 = static_cast<int>(std::lround(L / 2.0 * st * sth));
      for (int c = 0; c < n3; ++c) {
        const double phi = c * 2.0 * std::numbers::pi / n3;
        emit(ct, st * cth, st * sth * std::cos(phi), st * sth * std::sin(phi));
      }
    }
  }
}

}  // namespace

std::size_t candidate_count(int L) {
  std::size_t count = 0;
  walk_grid(L, [&](double, double, double, double) { ++count; });
  return count;
}

CandidateSet candidate_set(int L) {
  if (L < 8) throw GeometryError("candidate_set: L must be >= 8");
  CandidateSet s;
  s.L = L;
  s.rotations.reserve(candidate_count(L));
  walk_grid(L, [&](double w, double x, double y, double z) {
    s.rotations.push_back(Rotation::from_quaternion(w, x, y, z));
  });
  return s;
}

int default_candidate_L() {
  static const int l_star = [] {
    constexpr std::size_t target = 15236;
    for (int L = 8; L <= 512; ++L)
      if (candidate_count(L) == target) return L;
    throw GeometryError("candidate grid scan failed to reach the default size");
  }();
  return l_star;
}

CandidateSet default_candidate_set() { return candidate_set(default_candidate_L()); }

namespace {
constexpr std::uint64_t kCacheMagic = 0x6d61706361646964ULL;  // "mapcadid"
}

void save_candidate_set(const std::string& path, const CandidateSet& s) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw VolumeError("cannot create '" + path + "'");
  std::uint64_t magic = kCacheMagic;
  std::uint64_t l = static_cast<std::uint64_t>(s.L);
  f.write(reinterpret_cast<const char*>(&magic), 8);
  f.write(reinterpret_cast<const char*>(&l), 8);
  for (const Rotation& r : s.rotations) {
    double buf[9];
    Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(buf) = r.matrix();
    f.write(reinterpret_cast<const char*>(buf), sizeof(buf));
  }
  if (!f) throw VolumeError("write failed for '" + path + "'");
}

CandidateSet load_candidate_set(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw VolumeError("cannot open '" + path + "'");
  std::uint64_t magic = 0, l = 0;
  f.read(reinterpret_cast<char*>(&magic), 8);
  f.read(reinterpret_cast<char*>(&l), 8);
  if (!f || magic != kCacheMagic)
    throw VolumeError("'" + path + "' is not a candidate-set cache");
  CandidateSet s;
  s.L = static_cast<int>(l);
  const std::size_t count = candidate_count(s.L);
  s.rotations.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double buf[9];
    f.read(reinterpret_cast<char*>(buf), sizeof(buf));
    if (!f) throw VolumeError("'" + path + "': truncated candidate-set cache");
    Mat3 m = Eigen::Map<Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(buf);
    s.rotations.push_back(Rotation(m));
  }
  return s;
}

}  // namespace mapalign
