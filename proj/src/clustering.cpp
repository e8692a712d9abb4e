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

#include "hybridcf/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "hybridcf/kernels.hpp"

namespace hybridcf {

namespace {

struct UserColumns {
  std::vector<double> xs, ys, zs;

  explicit UserColumns(std::span<const Point3> users) {
    xs.reserve(users.size());
    ys.reserve(users.size());
    zs.reserve(users.size());
    for (const auto& p : users) {
      xs.push_back(p.x);
      ys.push_back(p.y);
      zs.push_back(p.z);
    }
  }

  kernels::PointsSoA view() const { return {xs, ys, zs}; }
};

// dist[j] = distance from user j to `ap`.
void distances_to(const UserColumns& users, const Point3& ap, std::vector<double>& dist) {
  dist.resize(users.xs.size());
  kernels::squared_distances(users.view(), ap.x, ap.y, ap.z, dist);
  for (double& d : dist) d = std::sqrt(d);
}

}  // namespace

ClusteringMatrix cluster_distance(std::span<const Point3> users, std::span<const Point3> aps,
                                  double d_max) {
  if (!(d_max > 0.0)) throw std::invalid_argument("d_max must be positive");
  ClusteringMatrix a;
  a.entries.setZero(static_cast<Eigen::Index>(users.size()), static_cast<Eigen::Index>(aps.size()));
  const UserColumns columns(users);
  std::vector<double> dist;
  for (std::size_t i = 0; i < aps.size(); ++i) {
    distances_to(columns, aps[i], dist);
    for (std::size_t j = 0; j < users.size(); ++j) {
      if (dist[j] <= d_max) a.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = 1;
    }
  }
  return a;
}

ClusteringMatrix cluster_top_n(std::span<const Point3> users, std::span<const Point3> aps,
                               std::size_t n_max) {
  if (n_max == 0) throw std::invalid_argument("n_max must be at least 1");
  ClusteringMatrix a;
  a.entries.setZero(static_cast<Eigen::Index>(users.size()), static_cast<Eigen::Index>(aps.size()));
  const UserColumns columns(users);
  const std::size_t keep = std::min(n_max, users.size());
  std::vector<double> dist;
  std::vector<std::size_t> order(users.size());
  for (std::size_t i = 0; i < aps.size(); ++i) {
    distances_to(columns, aps[i], dist);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return dist[l] < dist[r]; });
    for (std::size_t k = 0; k < keep; ++k) {
      a.entries(static_cast<Eigen::Index>(order[k]), static_cast<Eigen::Index>(i)) = 1;
    }
  }
  return a;
}

ClusteringMatrix cluster_full(std::size_t n_users, std::size_t n_aps) {
  ClusteringMatrix a;
  a.entries.setOnes(static_cast<Eigen::Index>(n_users), static_cast<Eigen::Index>(n_aps));
  return a;
}

Eigen::MatrixXd row_diag(const ClusteringMatrix& a, std::size_t user) {
  if (user >= a.users()) throw std::out_of_range("row_diag: user index out of range");
  const Eigen::VectorXd row = a.entries.row(static_cast<Eigen::Index>(user)).cast<double>().transpose();
  return row.asDiagonal();
}

}  // namespace hybridcf
