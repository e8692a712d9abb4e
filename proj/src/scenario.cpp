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

#include "hybridcf/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hybridcf {

namespace {

std::size_t exact_sqrt(std::size_t n) {
  auto root = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  while (root * root > n) --root;
  while ((root + 1) * (root + 1) <= n) ++root;
  return root;
}

}  // namespace

void Room::validate() const {
  if (!(length > 0.0) || !(width > 0.0) || !(height > 0.0) || !(user_altitude > 0.0)) {
    throw std::invalid_argument("room dimensions and user altitude must be positive");
  }
  if (!(user_altitude < height)) {
    throw std::invalid_argument("user altitude must be below the ceiling");
  }
}

std::vector<Point3> square_grid(const Room& room, std::size_t n) {
  room.validate();
  const std::size_t side = exact_sqrt(n);
  if (n == 0 || side * side != n) {
    throw std::invalid_argument("AP count " + std::to_string(n) +
                                " is not a positive perfect square");
  }
  const double pitch_x = room.length / static_cast<double>(side);
  const double pitch_y = room.width / static_cast<double>(side);
  std::vector<Point3> out;
  out.reserve(n);
  for (std::size_t ix = 0; ix < side; ++ix) {
    for (std::size_t iy = 0; iy < side; ++iy) {
      out.push_back({(static_cast<double>(ix) + 0.5) * pitch_x,
                     (static_cast<double>(iy) + 0.5) * pitch_y, room.height});
    }
  }
  return out;
}

std::vector<Point3> ceiling_layout(const Room& room, std::size_t n) {
  room.validate();
  if (n == 0) return {};
  const std::size_t side = exact_sqrt(n);
  if (side * side == n) return square_grid(room, n);

  const std::size_t cols = side + 1;
  const std::size_t rows = (n + cols - 1) / cols;
  const double pitch_x = room.length / static_cast<double>(rows);
  std::vector<Point3> out;
  out.reserve(n);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t in_row = std::min(cols, n - r * cols);
    const double pitch_y = room.width / static_cast<double>(in_row);
    for (std::size_t c = 0; c < in_row; ++c) {
      out.push_back({(static_cast<double>(r) + 0.5) * pitch_x,
                     (static_cast<double>(c) + 0.5) * pitch_y, room.height});
    }
  }
  return out;
}

ApLayout deploy_aps(const Room& room, std::size_t n_vap, std::size_t n_rap) {
  return ApLayout{square_grid(room, n_vap), square_grid(room, n_rap)};
}

std::vector<Point3> place_users(const Room& room, std::size_t n_users, Rng& rng) {
  room.validate();
  if (n_users == 0) throw std::invalid_argument("at least one user is required");
  std::uniform_real_distribution<double> along_x(0.0, room.length);
  std::uniform_real_distribution<double> along_y(0.0, room.width);
  std::vector<Point3> out;
  out.reserve(n_users);
  for (std::size_t j = 0; j < n_users; ++j) {
    const double x = along_x(rng);
    const double y = along_y(rng);
    out.push_back({x, y, room.user_altitude});
  }
  return out;
}

std::vector<bool> sample_blockage(std::size_t n_users, double blockage_rate, Rng& rng) {
  if (!(blockage_rate >= 0.0 && blockage_rate <= 1.0)) {
    throw std::invalid_argument("blockage rate must lie in [0, 1]");
  }
  const auto count =
      static_cast<std::size_t>(std::llround(blockage_rate * static_cast<double>(n_users)));
  std::vector<std::size_t> order(n_users);
  std::iota(order.begin(), order.end(), std::size_t{0});
  // Partial Fisher-Yates: the first `count` slots become a uniform sample.
  for (std::size_t k = 0; k < count; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, n_users - 1);
    std::swap(order[k], order[pick(rng)]);
  }
  std::vector<bool> blocked(n_users, false);
  for (std::size_t k = 0; k < count; ++k) blocked[order[k]] = true;
  return blocked;
}

}  // namespace hybridcf
