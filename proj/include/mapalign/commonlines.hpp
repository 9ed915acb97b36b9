// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "mapalign/projector.hpp"

namespace mapalign {

/// Direction of the common line in each image's spectrum, radians in [0, 2pi).
struct CommonLinePair {
  double alpha_i = 0.0;
  double alpha_j = 0.0;
};

/// 1D shift candidates {-d + k*delta | k = 0..floor(2d/delta)} in pixels.
struct ShiftGrid {
  double d = 0.0;
  double delta = 1.0;
  std::vector<double> values;

  static ShiftGrid make(double d, double delta);
  /// Default for images of side n: d = ceil(0.15 n), 1-pixel steps.
  static ShiftGrid for_side(int n);
};

/// Angles of the common line between projections with rotations ri, rj
/// (q = ri3 x rj3 normalized; c_i = ri^T q, c_j = rj^T q). Throws
/// GeometryError when the viewing directions are parallel within 1e-8.
CommonLinePair commonline_angles(const Rotation& ri, const Rotation& rj);

/// Mean over references of the normalized common-line agreement between
/// the probe spectrum (hypothesized rotation q, ray phase-shifted by dxi
/// pixels) and each reference spectrum. Rays are mean-subtracted before
/// normalization and DC is excluded by construction of PolarSpectrum.
/// Pairs with parallel viewing directions are skipped; if every pair is
/// skipped the result is -infinity.
double cost_rho(const PolarSpectrum& probe, const std::vector<PolarSpectrum>& refs,
                const Rotation& q, const std::vector<Rotation>& ref_rotations,
                double dxi);

/// Precomputed reference state for orienting projections against one
/// volume: reference projections at seeded Haar rotations, their polar
/// spectra normalized once. align() scans S x shift grid in parallel with
/// an index-ordered max reduction, so results do not depend on the thread
/// count.
class ProjectionAligner {
 public:
  struct Config {
    int n_refs = 30;
    int n_theta = 360;
    int n_r = 0;  // 0: ceil(n/2)
    std::uint64_t seed = 0;
    int threads = 0;  // 0: global default
  };

  struct Result {
    Rotation rotation;
    double score = 0.0;
    std::size_t q_index = 0;
    int shift_index = 0;
  };

  ProjectionAligner(const VolumeProjector& reference_volume, const CandidateSet& candidates,
                    const ShiftGrid& grid, const Config& config);

  Result align(const Image2D& projection) const;

  const std::vector<Rotation>& reference_rotations() const { return ref_rotations_; }

 private:
  const CandidateSet& candidates_;
  ShiftGrid grid_;
  Config cfg_;
  int n_ = 0;
  double radial_step_ = 0.0;
  std::vector<Rotation> ref_rotations_;
  std::vector<std::vector<Complex>> ref_rays_;  // [i][theta * n_r + j], normalized
};

/// One-shot Algorithm-2 search: orients projection p against volume v.
Rotation align_projection(const ProjectionImage& p, const Volume& v,
                          const CandidateSet& s, int n_refs, const ShiftGrid& grid,
                          std::uint64_t seed);

namespace detail {
/// Shared by cost_rho and the scan table: modulate by exp(-i 2 pi xi dxi / n),
/// subtract the mean, normalize to unit L2 (all-zero stays all-zero).
void normalized_ray(const Complex* ray, int n_r, double radial_step, int n,
                    double dxi, Complex* out);
double ray_dot(const Complex* a, const Complex* b, int n_r);
int quantize_angle(double alpha, int n_theta);
}  // namespace detail

}  // namespace mapalign
