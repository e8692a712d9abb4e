/*
 * Copyright 2026 The hybridcf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "hybridcf/clustering.hpp"

namespace hybridcf {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Singular values of the clustered channel block below this fraction of
/// the largest are treated as zero. The block's Gram matrix squares the
/// condition number, so this is a 1e12 condition limit on the Gram matrix.
inline constexpr double kRankTolerance = 1e-6;

// Relative headroom left below the per-AP budget by allocate_powers.
inline constexpr double kBudgetMargin = 1e-12;

/// Users sharing at least one serving AP with `user`. Contains `user`
/// itself iff its row is nonzero. Sorted ascending.
std::vector<std::size_t> shared_ap_set(const ClusteringMatrix& a, std::size_t user);

/// Clustering-aware partial zero forcing. `channel` is users x APs with
/// row j = h_j^T; the result is APs x users with column j = w_j.
///
/// Column j is the minimum-norm solution of
///   (sum_{l in S_j} A_j g_l (A_j g_l)^H) w_j = A_j g_j,   g_l = conj(h_l),
/// which forces h_l^T A_j w_j = 0 for every other l in S_j whenever the
/// clustered block has full column rank. For real (VLC) channels g_l = h_l.
/// The Gram matrix is never formed: with X_j = [A_j g_l]_{l in S_j},
/// (X_j X_j^H)^+ X_j = (X_j^+)^H, so w_j is read off an SVD of X_j.
///
/// Throws std::invalid_argument on non-finite channel entries or a
/// dimension mismatch.
template <typename Scalar>
Matrix<Scalar> partial_zf(const Matrix<Scalar>& channel, const ClusteringMatrix& a);

/// Equal power for every user, scaled so the most loaded AP spends exactly
/// its budget.
struct PowerAllocation {
  std::vector<double> per_user;
  double max_ap_load = 0.0;  // max_i sum_j |w_ij|^2 before scaling
};

/// Per-AP load sum_j |w_ij|^2.
template <typename Scalar>
std::vector<double> ap_loads(const Matrix<Scalar>& precoder);

/// P_j = 1 / max_i sum_j |w_ij|^2 for all j; all zeros when W == 0.
template <typename Scalar>
PowerAllocation allocate_powers(const Matrix<Scalar>& precoder);

extern template Matrix<double> partial_zf(const Matrix<double>&, const ClusteringMatrix&);
extern template Matrix<std::complex<double>> partial_zf(const Matrix<std::complex<double>>&,
                                                        const ClusteringMatrix&);
extern template std::vector<double> ap_loads(const Matrix<double>&);
extern template std::vector<double> ap_loads(const Matrix<std::complex<double>>&);
extern template PowerAllocation allocate_powers(const Matrix<double>&);
extern template PowerAllocation allocate_powers(const Matrix<std::complex<double>>&);

}  // namespace hybridcf
