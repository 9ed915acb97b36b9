// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include "mapalign/geometry.hpp"

namespace mapalign {

class VolumeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Cubic real-valued density map. Data is stored x-fastest (MRC order);
/// the grid center sits at voxel floor(n/2) on each axis. Immutable by
/// convention once filled: every operation below returns a new Volume.
class Volume {
 public:
  Volume() = default;
  explicit Volume(int n, double fill = 0.0);
  Volume(int n, std::vector<double> data);

  int n() const { return n_; }
  int center() const { return n_ / 2; }
  std::size_t size() const { return data_.size(); }

  double& at(int x, int y, int z) { return data_[idx(x, y, z)]; }
  double at(int x, int y, int z) const { return data_[idx(x, y, z)]; }
  std::size_t idx(int x, int y, int z) const {
    return static_cast<std::size_t>((z * n_ + y)) * n_ + x;
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  /// Trilinear sample at a (possibly fractional) voxel coordinate;
  /// zero outside the grid.
  double sample(double x, double y, double z) const;

  double voxel_size = 0.0;  // optional physical spacing, metadata only

 private:
  int n_ = 0;
  std::vector<double> data_;
};

/// out(r) = v(R * J^u * r - t), r in centered coordinates, trilinear
/// interpolation, zero outside.
Volume apply_transform(const Volume& v, const RigidTransform& t);

/// z-flip about the grid center: z -> (2*floor(n/2) - z) mod n.
Volume reflect(const Volume& v);

/// Pearson correlation over all voxels; 0 if either argument is constant.
double correlation(const Volume& a, const Volume& b);

/// Fourier cropping: central n_ds^3 block of the centered spectrum,
/// inverse-transformed, real part.
Volume downsample(const Volume& v, int n_ds);

double relative_l2(const Volume& a, const Volume& b);

}  // namespace mapalign
