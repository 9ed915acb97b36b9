// SPDX-FileCopyrightText: Copyright (c) 2026 mapalign developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "mapalign/geometry.hpp"

namespace mapalign {

/// Inputs of the rotation-synchronization step: the rotations used to
/// project the moving map and the per-projection orientation estimates
/// against the reference map. `reflected` selects the handedness branch.
struct SyncProblem {
  std::vector<Rotation> projection_rotations;  // R_i
  std::vector<Rotation> estimated_rotations;   // R~_i
  bool reflected = false;
};

struct SyncResult {
  Rotation o_est;
  std::vector<Rotation> g_est;  // relative symmetry elements g_i g_1^T
  double eigengap = 0.0;        // lambda_3 - lambda_4 of H
  bool degenerate = false;      // eigengap <= 1e-6 * N
};

/// X_i = R_i R~_i^T, or J R_i J R~_i^T on the reflected branch.
std::vector<Mat3> build_x(const SyncProblem& p);

/// Rank-3 synchronization: blocks H_ij = X_i^T X_j, three leading
/// eigenvectors, per-block projection to the nearest orthogonal matrix,
/// g_est_i = V_i V_1^T, O_i = g_est_i^T R~_i R_i^T (J-conjugated on the
/// reflected branch), averaged through the SVD polar factor.
SyncResult synchronize(const SyncProblem& p);

/// argmin_R sum_i |O_i - R|_F^2: polar factor of the mean with the
/// determinant corrected to +1. Throws GeometryError when the mean has
/// rank < 3.
Rotation svd_rotation_average(const std::vector<Rotation>& rotations);

}  // namespace mapalign
