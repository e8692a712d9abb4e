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

#include <cstddef>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "hybridcf/geometry.hpp"

namespace hybridcf {

/// Binary user-to-AP serving matrix: entries(j, i) == 1 iff AP i serves
/// user j. Rows are users, columns are APs of one network.
struct ClusteringMatrix {
  Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic> entries;

  std::size_t users() const noexcept { return static_cast<std::size_t>(entries.rows()); }
  std::size_t aps() const noexcept { return static_cast<std::size_t>(entries.cols()); }
  bool serves(std::size_t user, std::size_t ap) const {
    return entries(static_cast<Eigen::Index>(user), static_cast<Eigen::Index>(ap)) != 0;
  }

  friend bool operator==(const ClusteringMatrix& a, const ClusteringMatrix& b) {
    return a.entries.rows() == b.entries.rows() && a.entries.cols() == b.entries.cols() &&
           a.entries == b.entries;
  }
};

enum class ClusteringMode { kNone, kDistance, kTopN };

/// entries(j, i) = 1 iff the 3D distance between user j and AP i is <= d_max.
ClusteringMatrix cluster_distance(std::span<const Point3> users, std::span<const Point3> aps,
                                  double d_max);

/// Each AP serves its n_max nearest users; equidistant users are ranked by
/// lower index.
ClusteringMatrix cluster_top_n(std::span<const Point3> users, std::span<const Point3> aps,
                               std::size_t n_max);

ClusteringMatrix cluster_full(std::size_t n_users, std::size_t n_aps);

/// diag(a_{l,1}, ..., a_{l,N_ap}).
Eigen::MatrixXd row_diag(const ClusteringMatrix& a, std::size_t user);

}  // namespace hybridcf
