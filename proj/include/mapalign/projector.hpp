// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "mapalign/fourier.hpp"
#include "mapalign/geometry.hpp"
#include "mapalign/volume.hpp"

namespace mapalign {

struct ProjectionImage {
  Image2D image;
  std::optional<Rotation> rotation;  // generating rotation, when known

  int n() const { return image.n; }
};

/// Line-integral projection along the rotated z-axis,
///   P(x,y) = sum_z v(x R^(1) + y R^(2) + z R^(3)),
/// computed through the central-slice theorem (slice of the 3D spectrum,
/// inverse 2D FFT, real part).
ProjectionImage project(const Volume& v, const Rotation& r);

/// Reuses one oversampled spectrum for many projections of the same volume.
class VolumeProjector {
 public:
  explicit VolumeProjector(const Volume& v) : sampler_(v) {}
  explicit VolumeProjector(CentralSliceSampler sampler) : sampler_(std::move(sampler)) {}

  int n() const { return sampler_.n(); }
  const CentralSliceSampler& sampler() const { return sampler_; }
  ProjectionImage project(const Rotation& r) const;

 private:
  CentralSliceSampler sampler_;
};

/// N independent Haar-distributed rotations, deterministic given seed.
std::vector<Rotation> random_rotations(int count, std::uint64_t seed);

/// Quasi-uniform candidate rotations over SO(3).
///
/// The grid lives in hyperspherical quaternion coordinates: tau in
/// [0, pi/2) at floor(L/4) points, theta in [0, pi) at floor(L/2 sin tau)
/// points per tau, phi in [0, 2 pi) at round(L/2 sin tau sin theta) points
/// per (tau, theta), mapped through
///   q = (cos tau, sin tau cos theta, sin tau sin theta cos phi,
///        sin tau sin theta sin phi).
/// Nodes with a zero inner count contribute nothing, so the identity's
/// neighborhood is covered only from the first nonzero tau ring.
struct CandidateSet {
  int L = 0;
  std::vector<Rotation> rotations;

  std::size_t size() const { return rotations.size(); }
};

CandidateSet candidate_set(int L);

/// Number of rotations candidate_set(L) would produce.
std::size_t candidate_count(int L);

/// Grid density whose candidate count matches the default operating
/// point (15,236 rotations); found by scanning L once per process.
int default_candidate_L();
CandidateSet default_candidate_set();

/// Optional binary cache: 16-byte header (magic, L) + 9*|S| doubles.
void save_candidate_set(const std::string& path, const CandidateSet& s);
CandidateSet load_candidate_set(const std::string& path);

}  // namespace mapalign
