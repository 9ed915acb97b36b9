// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#include "mapalign/volume.hpp"

#include <cmath>

#include "mapalign/fourier.hpp"

namespace mapalign {

Volume::Volume(int n, double fill)
    : n_(n), data_(static_cast<std::size_t>(n) * n * n, fill) {
  if (n <= 0) throw VolumeError("volume side must be positive");
}

Volume::Volume(int n, std::vector<double> data) : n_(n), data_(std::move(data)) {
  if (n <= 0) throw VolumeError("volume side must be positive");
  if (data_.size() != static_cast<std::size_t>(n) * n * n)
    throw VolumeError("volume data size does not match n^3");
}

double Volume::sample(double x, double y, double z) const {
  const int x0 = static_cast<int>(std::floor(x));
  const int y0 = static_cast<int>(std::floor(y));
  const int z0 = static_cast<int>(std::floor(z));
  const double fx = x - x0, fy = y - y0, fz = z - z0;
  double acc = 0.0;
  for (int dz = 0; dz <= 1; ++dz) {
    const int zz = z0 + dz;
    if (zz < 0 || zz >= n_) continue;
    const double wz = dz ? fz : 1.0 - fz;
    for (int dy = 0; dy <= 1; ++dy) {
      const int yy = y0 + dy;
      if (yy < 0 || yy >= n_) continue;
      const double wy = dy ? fy : 1.0 - fy;
      for (int dx = 0; dx <= 1; ++dx) {
        const int xx = x0 + dx;
        if (xx < 0 || xx >= n_) continue;
        const double wx = dx ? fx : 1.0 - fx;
        acc += wz * wy * wx * at(xx, yy, zz);
      }
    }
  }
  return acc;
}

Volume apply_transform(const Volume& v, const RigidTransform& t) {
  const int n = v.n();
  const int c = n / 2;
  Mat3 a = t.rotation.matrix();
  if (t.reflected) a = a * reflection_j();
  Volume out(n);
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) {
        const Vec3 r(x - c, y - c, z - c);
        const Vec3 s = a * r - t.translation;
        out.at(x, y, z) = v.sample(s.x() + c, s.y() + c, s.z() + c);
      }
  return out;
}

Volume reflect(const Volume& v) {
  const int n = v.n();
  const int c = n / 2;
  Volume out(n);
  for (int z = 0; z < n; ++z) {
    int zz = (2 * c - z) % n;
    if (zz < 0) zz += n;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x) out.at(x, y, z) = v.at(x, y, zz);
  }
  return out;
}

double correlation(const Volume& a, const Volume& b) {
  if (a.n() != b.n()) throw VolumeError("correlation: volume sizes differ");
  const std::size_t m = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    ma += a.data()[i];
    mb += b.data()[i];
  }
  ma /= m;
  mb /= m;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double da = a.data()[i] - ma;
    const double db = b.data()[i] - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

Volume downsample(const Volume& v, int n_ds) {
  const int n = v.n();
  if (n_ds > n) throw VolumeError("downsample: n_ds exceeds volume side");
  if (n_ds <= 0) throw VolumeError("downsample: n_ds must be positive");
  if (n_ds == n) {
    Spectrum3D s = fft3_centered(v);
    return ifft3_centered(s);
  }
  Spectrum3D s = fft3_centered(v);
  const int c = n / 2;
  const int cd = n_ds / 2;
  Spectrum3D cropped;
  cropped.n = n_ds;
  cropped.data.resize(static_cast<std::size_t>(n_ds) * n_ds * n_ds);
  for (int z = 0; z < n_ds; ++z)
    for (int y = 0; y < n_ds; ++y)
      for (int x = 0; x < n_ds; ++x)
        cropped.at(x, y, z) = s.at(x - cd + c, y - cd + c, z - cd + c);
  Volume out = ifft3_centered(cropped);
  out.voxel_size = v.voxel_size > 0 ? v.voxel_size * n / n_ds : 0.0;
  return out;
}

double relative_l2(const Volume& a, const Volume& b) {
  if (a.n() != b.n()) throw VolumeError("relative_l2: volume sizes differ");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a.data()[i] - b.data()[i];
    num += d * d;
    den += b.data()[i] * b.data()[i];
  }
  return den > 0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace mapalign
