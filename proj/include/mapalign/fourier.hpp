// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "mapalign/geometry.hpp"
#include "mapalign/volume.hpp"

namespace mapalign {

using Complex = std::complex<double>;

/// Square real image, x-fastest storage like Volume.
struct Image2D {
  int n = 0;
  std::vector<double> data;

  Image2D() = default;
  explicit Image2D(int side, double fill = 0.0)
      : n(side), data(static_cast<std::size_t>(side) * side, fill) {}
  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * n + x]; }
  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * n + x]; }
};

/// Centered complex spectrum of a Volume: zero frequency at voxel
/// floor(n/2) on each axis, x-fastest storage.
struct Spectrum3D {
  int n = 0;
  std::vector<Complex> data;

  Complex& at(int x, int y, int z) {
    return data[(static_cast<std::size_t>(z) * n + y) * n + x];
  }
  Complex at(int x, int y, int z) const {
    return data[(static_cast<std::size_t>(z) * n + y) * n + x];
  }
};

/// Unitary centered transforms:
///   S(k) = n^{-3/2} sum_r v(r) exp(-2 pi i (k-c).(r-c) / n),  c = floor(n/2).
Spectrum3D fft3_centered(const Volume& v);

/// Inverse of fft3_centered; the imaginary residue is discarded.
Volume ifft3_centered(const Spectrum3D& s);

/// Centered 2D transforms with 1/n normalization, same phase conventions.
std::vector<Complex> fft2_centered(const Image2D& img);
Image2D ifft2_centered_real(const std::vector<Complex>& spec, int n);

/// Polar resampling of a 2D image spectrum. Ray k points along angle
/// 2 pi k / n_theta; radial sample j (j = 0..n_r-1) sits at frequency
/// radius xi = (j+1) * (n/2) / n_r in index units, so DC is excluded and
/// the last sample reaches the Nyquist radius.
struct PolarSpectrum {
  int n_theta = 0;
  int n_r = 0;
  double radial_step = 0.0;  // (n/2) / n_r
  std::vector<Complex> rays; // rays[k * n_r + j]

  const Complex* ray(int k) const { return rays.data() + static_cast<std::size_t>(k) * n_r; }
};

/// Evaluates the image spectrum on the polar grid by gridding NUFFT,
/// with relative accuracy well inside 1e-4 of the direct non-uniform DFT
///   P(p) = n^{-1} sum_x img(x) exp(-2 pi i p.(x-c) / n).
/// n_theta must be even.
PolarSpectrum polar_ft(const Image2D& img, int n_theta, int n_r);

/// Type-2 NUFFT evaluator for a volume's centered spectrum: factor-2
/// zero-padded FFT once at construction, Kaiser-Bessel interpolation per
/// point. phi_hat(p) = n^{-3/2} sum_r v(r) exp(-2 pi i p.(r-c) / n),
/// periodic in p with period n.
class CentralSliceSampler {
 public:
  explicit CentralSliceSampler(const Volume& v);
  explicit CentralSliceSampler(const Spectrum3D& s);

  int n() const { return n_; }

  Complex sample_point(const Vec3& p) const;

  /// Central-slice samples phi_hat(wx R^(1) + wy R^(2)) on the centered
  /// n x n frequency grid, x-fastest.
  std::vector<Complex> sample_slice(const Rotation& r) const;

 private:
  void build(const std::vector<double>& vol);

  int n_ = 0;
  int m_ = 0;  // oversampled side, 2n
  std::vector<Complex> fine_;
};

/// One-shot convenience matching the sampler on a slice grid of side n.
std::vector<Complex> sample_central_slice(const Spectrum3D& s, const Rotation& r, int n);

namespace detail {

/// Kaiser-Bessel interpolation kernel shared by the 2D and 3D gridding
/// paths. Width is in fine-grid samples.
struct KaiserBessel {
  static constexpr int width = 8;
  static constexpr double half = width / 2.0;
  double beta;
  std::vector<double> table;  // psi on [0, half], uniform, for fast lookup

  KaiserBessel();
  double operator()(double t) const;      // table lookup
  double transform(double nu) const;      // continuous FT by quadrature
};

const KaiserBessel& kb();

}  // namespace detail

}  // namespace mapalign
