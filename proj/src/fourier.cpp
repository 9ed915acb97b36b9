// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#include "mapalign/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <mutex>
#include <numbers>

namespace mapalign {

namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

// In-place c2c FFT of a contiguous rank-d array, FFTW_ESTIMATE so plans
// (and therefore results) do not depend on timing.
void fft_inplace(Complex* data, const std::vector<int>& dims, int sign) {
  fftw_complex* p = reinterpret_cast<fftw_complex*>(data);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), p, p,
                         sign, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    fftw_destroy_plan(plan);
  }
}

// out[i] = in[(i + shift) mod n] along every axis, cube of side n.
template <typename T>
std::vector<T> circshift3(const std::vector<T>& in, int n, int shift) {
  std::vector<T> out(in.size());
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) map[i] = (i + shift) % n;
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y) {
      const T* src = &in[(static_cast<std::size_t>(map[z]) * n + map[y]) * n];
      T* dst = &out[(static_cast<std::size_t>(z) * n + y) * n];
      for (int x = 0; x < n; ++x) dst[x] = src[map[x]];
    }
  return out;
}

template <typename T>
std::vector<T> circshift2(const std::vector<T>& in, int n, int shift) {
  std::vector<T> out(in.size());
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) map[i] = (i + shift) % n;
  for (int y = 0; y < n; ++y) {
    const T* src = &in[static_cast<std::size_t>(map[y]) * n];
    T* dst = &out[static_cast<std::size_t>(y) * n];
    for (int x = 0; x < n; ++x) dst[x] = src[map[x]];
  }
  return out;
}

}  // namespace

Spectrum3D fft3_centered(const Volume& v) {
  const int n = v.n();
  const int c = n / 2;
  std::vector<Complex> buf(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) buf[i] = v.data()[i];
  buf = circshift3(buf, n, c);  // ifftshift: voxel c -> index 0
  fft_inplace(buf.data(), {n, n, n}, FFTW_FORWARD);
  buf = circshift3(buf, n, n - c);  // fftshift
  const double scale = 1.0 / std::pow(static_cast<double>(n), 1.5);
  for (Complex& x : buf) x *= scale;
  Spectrum3D s;
  s.n = n;
  s.data = std::move(buf);
  return s;
}

Volume ifft3_centered(const Spectrum3D& s) {
  const int n = s.n;
  const int c = n / 2;
  std::vector<Complex> buf = circshift3(s.data, n, c);
  fft_inplace(buf.data(), {n, n, n}, FFTW_BACKWARD);
  buf = circshift3(buf, n, n - c);
  const double scale = 1.0 / std::pow(static_cast<double>(n), 1.5);
  Volume v(n);
  for (std::size_t i = 0; i < buf.size(); ++i) v.data()[i] = buf[i].real() * scale;
  return v;
}

std::vector<Complex> fft2_centered(const Image2D& img) {
  const int n = img.n;
  const int c = n / 2;
  std::vector<Complex> buf(img.data.size());
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = img.data[i];
  buf = circshift2(buf, n, c);
  fft_inplace(buf.data(), {n, n}, FFTW_FORWARD);
  buf = circshift2(buf, n, n - c);
  const double scale = 1.0 / n;
  for (Complex& x : buf) x *= scale;
  return buf;
}

Image2D ifft2_centered_real(const std::vector<Complex>& spec, int n) {
  const int c = n / 2;
  std::vector<Complex> buf = circshift2(spec, n, c);
  fft_inplace(buf.data(), {n, n}, FFTW_BACKWARD);
  buf = circshift2(buf, n, n - c);
  Image2D img(n);
  const double scale = 1.0 / n;
  for (std::size_t i = 0; i < buf.size(); ++i) img.data[i] = buf[i].real() * scale;
  return img;
}

namespace detail {

KaiserBessel::KaiserBessel() {
  // Beatty et al. shape parameter for oversampling factor 2.
  const double sigma = 2.0;
  const double w = width;
  beta = std::numbers::pi *
         std::sqrt((w / sigma) * (w / sigma) * (sigma - 0.5) * (sigma - 0.5) - 0.8);
  const int samples = 4096;
  table.resize(samples + 2);
  const double i0b = std::cyl_bessel_i(0.0, beta);
  for (int i = 0; i <= samples; ++i) {
    const double t = half * i / samples;
    const double arg = 1.0 - (t / half) * (t / half);
    table[i] = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(arg, 0.0))) / i0b;
  }
  table[samples + 1] = 0.0;
}

double KaiserBessel::operator()(double t) const {
  t = std::abs(t);
  if (t >= half) return 0.0;
  const double u = t / half * (table.size() - 2);
  const int i = static_cast<int>(u);
  const double f = u - i;
  return table[i] * (1.0 - f) + table[i + 1] * f;
}

double KaiserBessel::transform(double nu) const {
  // 64-node Gauss-Legendre quadrature of the (real, even) transform
  // integral over [0, half]; the integrand is smooth and barely
  // oscillatory for |nu| <= 1/4, so this is exact to machine precision.
  static const auto nodes = [] {
    std::array<std::pair<double, double>, 32> nw{};  // nodes/weights on (0,1)
    const int m = 64;
    for (int i = 0; i < 32; ++i) {
      // Newton iteration for the i-th positive root of P_64.
      double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= m; ++k) {
          const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = m * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-15) break;
      }
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = m * (x * p1 - p0) / (x * x - 1.0);
      nw[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
    }
    return nw;
  }();
  const double i0b = std::cyl_bessel_i(0.0, beta);
  double acc = 0.0;
  for (const auto& [x, wq] : nodes) {
    for (double s : {x, -x}) {
      const double tt = half * s;  // map (-1,1) -> (-half, half)
      const double arg = 1.0 - s * s;
      const double psi = std::cyl_bessel_i(0.0, beta * std::sqrt(std::max(arg, 0.0))) / i0b;
      acc += wq * psi * std::cos(2.0 * std::numbers::pi * nu * tt);
    }
  }
  return acc * half;  // jacobian of t = half * s
}

const KaiserBessel& kb() {
  static const KaiserBessel k;
  return k;
}

}  // namespace detail

void CentralSliceSampler::build(const std::vector<double>& vol) {
  const int n = n_;
  const int c = n / 2;
  m_ = 2 * n;
  const int cm = m_ / 2;
  const auto& k = detail::kb();

  std::vector<double> deconv(n);
  for (int r = 0; r < n; ++r)
    deconv[r] = 1.0 / k.transform(static_cast<double>(r - c) / m_);

  const double norm = 1.0 / std::pow(static_cast<double>(n), 1.5);
  std::vector<Complex> fine(static_cast<std::size_t>(m_) * m_ * m_, Complex(0, 0));
  for (int z = 0; z < n; ++z)
    for (int y = 0; y < n; ++y) {
      const double dzy = deconv[z] * deconv[y] * norm;
      const std::size_t src = (static_cast<std::size_t>(z) * n + y) * n;
      const std::size_t dst =
          (static_cast<std::size_t>(z - c + cm) * m_ + (y - c + cm)) * m_ + (0 - c + cm);
      for (int x = 0; x < n; ++x)
        fine[dst + x] = vol[src + x] * (dzy * deconv[x]);
    }

  fine = circshift3(fine, m_, cm);
  fft_inplace(fine.data(), {m_, m_, m_}, FFTW_FORWARD);
  fine = circshift3(fine, m_, m_ - cm);
  fine_ = std::move(fine);
}

CentralSliceSampler::CentralSliceSampler(const Volume& v) : n_(v.n()) {
  build(v.data());
}

CentralSliceSampler::CentralSliceSampler(const Spectrum3D& s) : n_(s.n) {
  build(ifft3_centered(s).data());
}

Complex CentralSliceSampler::sample_point(const Vec3& p) const {
  const auto& k = detail::kb();
  const int m = m_;
  const int cm = m / 2;
  constexpr int w = detail::KaiserBessel::width;

  double wx[w], wy[w], wz[w];
  int ix[w], iy[w], iz[w];
  for (int axis = 0; axis < 3; ++axis) {
    const double u = 2.0 * p[axis];  // fine-grid coordinate
    const int k0 = static_cast<int>(std::floor(u)) - w / 2 + 1;
    double* wgt = axis == 0 ? wx : axis == 1 ? wy : wz;
    int* idx = axis == 0 ? ix : axis == 1 ? iy : iz;
    for (int j = 0; j < w; ++j) {
      wgt[j] = k(u - (k0 + j));
      int q = (k0 + j + cm) % m;
      if (q < 0) q += m;
      idx[j] = q;
    }
  }
  Complex acc(0, 0);
  for (int a = 0; a < w; ++a) {
    const std::size_t za = static_cast<std::size_t>(iz[a]) * m;
    for (int b = 0; b < w; ++b) {
      const std::size_t yb = (za + iy[b]) * m;
      const double wzy = wz[a] * wy[b];
      Complex row(0, 0);
      for (int c2 = 0; c2 < w; ++c2) row += fine_[yb + ix[c2]] * wx[c2];
      acc += row * wzy;
    }
  }
  return acc;
}

std::vector<Complex> CentralSliceSampler::sample_slice(const Rotation& r) const {
  const int n = n_;
  const int c = n / 2;
  const Vec3 r1 = r.col(0), r2 = r.col(1);
  std::vector<Complex> out(static_cast<std::size_t>(n) * n);
  for (int y = 0; y < n; ++y) {
    const double wy = y - c;
    for (int x = 0; x < n; ++x) {
      const double wx = x - c;
      out[static_cast<std::size_t>(y) * n + x] = sample_point(wx * r1 + wy * r2);
    }
  }
  return out;
}

std::vector<Complex> sample_central_slice(const Spectrum3D& s, const Rotation& r, int n) {
  if (n != s.n) throw VolumeError("sample_central_slice: slice side must match spectrum side");
  CentralSliceSampler sampler(s);
  return sampler.sample_slice(r);
}

namespace {

// 2D gridding twin of CentralSliceSampler, local to polar_ft.
class PlaneSampler {
 public:
  explicit PlaneSampler(const Image2D& img) : n_(img.n), m_(2 * img.n) {
    const int n = n_, c = n / 2, cm = m_ / 2;
    const auto& k = detail::kb();
    std::vector<double> deconv(n);
    for (int r = 0; r < n; ++r)
      deconv[r] = 1.0 / k.transform(static_cast<double>(r - c) / m_);
    const double norm = 1.0 / n;
    std::vector<Complex> fine(static_cast<std::size_t>(m_) * m_, Complex(0, 0));
    for (int y = 0; y < n; ++y) {
      const std::size_t dst = static_cast<std::size_t>(y - c + cm) * m_ + (0 - c + cm);
      for (int x = 0; x < n; ++x)
        fine[dst + x] = img.at(x, y) * (deconv[y] * deconv[x] * norm);
    }
    fine = circshift2(fine, m_, cm);
    fft_inplace(fine.data(), {m_, m_}, FFTW_FORWARD);
    fine_ = circshift2(fine, m_, m_ - cm);
  }

  Complex sample(double px, double py) const {
    const auto& k = detail::kb();
    const int m = m_, cm = m / 2;
    constexpr int w = detail::KaiserBessel::width;
    double wx[w], wy[w];
    int ix[w], iy[w];
    const double p[2] = {px, py};
    for (int axis = 0; axis < 2; ++axis) {
      const double u = 2.0 * p[axis];
      const int k0 = static_cast<int>(std::floor(u)) - w / 2 + 1;
      double* wgt = axis == 0 ? wx : wy;
      int* idx = axis == 0 ? ix : iy;
      for (int j = 0; j < w; ++j) {
        wgt[j] = k(u - (k0 + j));
        int q = (k0 + j + cm) % m;
        if (q < 0) q += m;
        idx[j] = q;
      }
    }
    Complex acc(0, 0);
    for (int b = 0; b < w; ++b) {
      const std::size_t yb = static_cast<std::size_t>(iy[b]) * m;
      Complex row(0, 0);
      for (int a = 0; a < w; ++a) row += fine_[yb + ix[a]] * wx[a];
      acc += row * wy[b];
    }
    return acc;
  }

 private:
  int n_, m_;
  std::vector<Complex> fine_;
};

}  // namespace

PolarSpectrum polar_ft(const Image2D& img, int n_theta, int n_r) {
  if (n_theta % 2 != 0) throw VolumeError("polar_ft: n_theta must be even");
  PlaneSampler sampler(img);
  PolarSpectrum ps;
  ps.n_theta = n_theta;
  ps.n_r = n_r;
  ps.radial_step = (img.n / 2.0) / n_r;
  ps.rays.resize(static_cast<std::size_t>(n_theta) * n_r);
  for (int k = 0; k < n_theta; ++k) {
    const double th = 2.0 * std::numbers::pi * k / n_theta;
    const double cx = std::cos(th), sy = std::sin(th);
    for (int j = 0; j < n_r; ++j) {
      const double xi = (j + 1) * ps.radial_step;
      ps.rays[static_cast<std::size_t>(k) * n_r + j] = sampler.sample(xi * cx, xi * sy);
    }
  }
  return ps;
}

}  // namespace mapalign
