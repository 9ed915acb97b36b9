// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#include "mapalign/commonlines.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "threading.hpp"

namespace mapalign {

namespace {
constexpr double kParallelTol = 1e-8;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

ShiftGrid ShiftGrid::make(double d, double delta) {
  if (d < 0 || delta <= 0) throw GeometryError("shift grid: d >= 0 and delta > 0 required");
  ShiftGrid g;
  g.d = d;
  g.delta = delta;
  const int count = static_cast<int>(std::floor(2.0 * d / delta)) + 1;
  g.values.reserve(count);
  for (int k = 0; k < count; ++k) g.values.push_back(-d + k * delta);
  return g;
}

ShiftGrid ShiftGrid::for_side(int n) {
  return make(std::ceil(0.15 * n), 1.0);
}

CommonLinePair commonline_angles(const Rotation& ri, const Rotation& rj) {
  const Vec3 vi = ri.viewing_direction();
  const Vec3 vj = rj.viewing_direction();
  Vec3 q = vi.cross(vj);
  const double norm = q.norm();
  if (norm <= kParallelTol)
    throw GeometryError("common line undefined: parallel viewing directions");
  q /= norm;
  const Vec3 ci = ri.matrix().transpose() * q;
  const Vec3 cj = rj.matrix().transpose() * q;
  CommonLinePair p;
  p.alpha_i = std::atan2(ci.y(), ci.x());
  p.alpha_j = std::atan2(cj.y(), cj.x());
  if (p.alpha_i < 0) p.alpha_i += kTwoPi;
  if (p.alpha_j < 0) p.alpha_j += kTwoPi;
  return p;
}

namespace detail {

void normalized_ray(const Complex* ray, int n_r, double radial_step, int n,
                    double dxi, Complex* out) {
  Complex mean(0, 0);
  for (int j = 0; j < n_r; ++j) {
    const double xi = (j + 1) * radial_step;
    const double ph = -kTwoPi * xi * dxi / n;
    out[j] = ray[j] * Complex(std::cos(ph), std::sin(ph));
    mean += out[j];
  }
  mean /= static_cast<double>(n_r);
  double norm2 = 0.0;
  for (int j = 0; j < n_r; ++j) {
    out[j] -= mean;
    norm2 += std::norm(out[j]);
  }
  if (norm2 <= 0.0) return;  // keep the zero vector
  const double inv = 1.0 / std::sqrt(norm2);
  for (int j = 0; j < n_r; ++j) out[j] *= inv;
}

double ray_dot(const Complex* a, const Complex* b, int n_r) {
  // Re<a, b> = sum(re*re + im*im), a plain real dot over interleaved parts.
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  double acc = 0.0;
  for (int j = 0; j < 2 * n_r; ++j) acc += pa[j] * pb[j];
  return acc;
}

int quantize_angle(double alpha, int n_theta) {
  int k = static_cast<int>(std::lround(alpha / kTwoPi * n_theta)) % n_theta;
  if (k < 0) k += n_theta;
  return k;
}

}  // namespace detail

double cost_rho(const PolarSpectrum& probe, const std::vector<PolarSpectrum>& refs,
                const Rotation& q, const std::vector<Rotation>& ref_rotations,
                double dxi) {
  if (refs.size() != ref_rotations.size())
    throw GeometryError("cost_rho: references and rotations differ in count");
  const int n_r = probe.n_r;
  const int n_theta = probe.n_theta;
  const int n = static_cast<int>(std::lround(2.0 * probe.radial_step * n_r));
  std::vector<Complex> f(n_r), g(n_r);
  double acc = 0.0;
  int used = 0;
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].n_theta != n_theta || refs[i].n_r != n_r)
      throw GeometryError("cost_rho: polar grids differ");
    CommonLinePair pair;
    try {
      pair = commonline_angles(q, ref_rotations[i]);
    } catch (const GeometryError&) {
      continue;  // parallel viewing directions: no common line
    }
    const int a = detail::quantize_angle(pair.alpha_i, n_theta);
    const int b = detail::quantize_angle(pair.alpha_j, n_theta);
    detail::normalized_ray(probe.ray(a), n_r, probe.radial_step, n, dxi, f.data());
    detail::normalized_ray(refs[i].ray(b), n_r, refs[i].radial_step, n, 0.0, g.data());
    acc += detail::ray_dot(f.data(), g.data(), n_r);
    ++used;
  }
  if (used == 0) return -std::numeric_limits<double>::infinity();
  return acc / used;
}

ProjectionAligner::ProjectionAligner(const VolumeProjector& reference_volume,
                                     const CandidateSet& candidates,
                                     const ShiftGrid& grid, const Config& config)
    : candidates_(candidates), grid_(grid), cfg_(config), n_(reference_volume.n()) {
  if (cfg_.n_refs < 1) throw GeometryError("aligner: n_refs must be >= 1");
  if (cfg_.n_r <= 0) cfg_.n_r = (n_ + 1) / 2;
  ref_rotations_ = random_rotations(cfg_.n_refs, cfg_.seed);
  ref_rays_.resize(cfg_.n_refs);

  std::vector<PolarSpectrum> polar(cfg_.n_refs);
  detail::parallel_for(cfg_.n_refs, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t i = lo; i < hi; ++i) {
      ProjectionImage p = reference_volume.project(ref_rotations_[i]);
      polar[i] = polar_ft(p.image, cfg_.n_theta, cfg_.n_r);
    }
  }, cfg_.threads);

  radial_step_ = (n_ / 2.0) / cfg_.n_r;
  for (int i = 0; i < cfg_.n_refs; ++i) {
    ref_rays_[i].resize(static_cast<std::size_t>(cfg_.n_theta) * cfg_.n_r);
    for (int k = 0; k < cfg_.n_theta; ++k)
      detail::normalized_ray(polar[i].ray(k), cfg_.n_r, radial_step_, n_, 0.0,
                             ref_rays_[i].data() + static_cast<std::size_t>(k) * cfg_.n_r);
  }
}

ProjectionAligner::Result ProjectionAligner::align(const Image2D& projection) const {
  if (projection.n != n_)
    throw GeometryError("aligner: projection side differs from reference volume");
  const int n_theta = cfg_.n_theta;
  const int n_r = cfg_.n_r;
  const int n_shifts = static_cast<int>(grid_.values.size());
  const int n_refs = cfg_.n_refs;

  const PolarSpectrum probe = polar_ft(projection, n_theta, n_r);

  // Probe rays, phase-modulated per shift candidate and normalized once.
  std::vector<Complex> table(static_cast<std::size_t>(n_theta) * n_shifts * n_r);
  detail::parallel_for(n_theta, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t a = lo; a < hi; ++a)
      for (int k = 0; k < n_shifts; ++k)
        detail::normalized_ray(probe.ray(static_cast<int>(a)), n_r, radial_step_, n_,
                               grid_.values[k],
                               table.data() + (a * n_shifts + k) * n_r);
  }, cfg_.threads);

  struct Best {
    double score = -std::numeric_limits<double>::infinity();
    std::size_t q = 0;
    int shift = 0;
    bool valid = false;
  };

  const std::size_t n_q = candidates_.size();
  const int nthreads = cfg_.threads > 0 ? cfg_.threads : detail::threads();
  const int chunks = std::max(1, std::min<int>(nthreads * 4, static_cast<int>(n_q)));
  std::vector<Best> chunk_best(chunks);
  const std::size_t chunk_size = (n_q + chunks - 1) / chunks;

  detail::parallel_for(chunks, [&](std::int64_t clo, std::int64_t chi) {
    std::vector<double> acc(n_shifts);
    std::vector<const Complex*> probe_rows(n_refs);
    std::vector<const Complex*> ref_rows(n_refs);
    for (std::int64_t ci = clo; ci < chi; ++ci) {
      Best best;
      const std::size_t qlo = ci * chunk_size;
      const std::size_t qhi = std::min(n_q, qlo + chunk_size);
      for (std::size_t qi = qlo; qi < qhi; ++qi) {
        const Rotation& q = candidates_.rotations[qi];
        const Vec3 vq = q.viewing_direction();
        int used = 0;
        for (int i = 0; i < n_refs; ++i) {
          const Vec3 vr = ref_rotations_[i].viewing_direction();
          Vec3 cl = vq.cross(vr);
          const double norm = cl.norm();
          if (norm <= kParallelTol) continue;
          cl /= norm;
          const Vec3 cp = q.matrix().transpose() * cl;
          const Vec3 cr = ref_rotations_[i].matrix().transpose() * cl;
          double alpha = std::atan2(cp.y(), cp.x());
          double beta = std::atan2(cr.y(), cr.x());
          if (alpha < 0) alpha += kTwoPi;
          if (beta < 0) beta += kTwoPi;
          const int a = detail::quantize_angle(alpha, n_theta);
          const int b = detail::quantize_angle(beta, n_theta);
          probe_rows[used] = table.data() + (static_cast<std::size_t>(a) * n_shifts) * n_r;
          ref_rows[used] = ref_rays_[i].data() + static_cast<std::size_t>(b) * n_r;
          ++used;
        }
        if (used == 0) continue;
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int i = 0; i < used; ++i) {
          const Complex* frow = probe_rows[i];
          const Complex* grow = ref_rows[i];
          for (int k = 0; k < n_shifts; ++k)
            acc[k] += detail::ray_dot(frow + static_cast<std::size_t>(k) * n_r, grow, n_r);
        }
        for (int k = 0; k < n_shifts; ++k) {
          const double score = acc[k] / used;
          if (!best.valid || score > best.score) {
            best = {score, qi, k, true};
          }
        }
      }
      chunk_best[ci] = best;
    }
  }, cfg_.threads);

  Best overall;
  for (const Best& b : chunk_best) {
    if (!b.valid) continue;
    if (!overall.valid || b.score > overall.score) overall = b;
  }
  if (!overall.valid)
    throw GeometryError("align_projection: no candidate produced a common line");
  return Result{candidates_.rotations[overall.q], overall.score, overall.q, overall.shift};
}

Rotation align_projection(const ProjectionImage& p, const Volume& v,
                          const CandidateSet& s, int n_refs, const ShiftGrid& grid,
                          std::uint64_t seed) {
  if (p.n() != v.n())
    throw GeometryError("align_projection: projection and volume sides differ");
  ProjectionAligner::Config cfg;
  cfg.n_refs = n_refs;
  cfg.seed = seed;
  VolumeProjector projector(v);
  ProjectionAligner aligner(projector, s, grid, cfg);
  return aligner.align(p.image).rotation;
}

}  // namespace mapalign
