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
#include <vector>

#include "hybridcf/geometry.hpp"

namespace hybridcf {

struct Room {
  double length = 10.0;
  double width = 10.0;
  double height = 3.0;
  double user_altitude = 0.85;

  // Throws std::invalid_argument on non-positive dimensions or when the
  // user plane is not below the ceiling.
  void validate() const;
};

struct ApLayout {
  std::vector<Point3> vlc_positions;
  std::vector<Point3> rf_positions;
};

struct UserState {
  std::vector<Point3> positions;
  std::vector<bool> vlc_blocked;

  std::size_t size() const noexcept { return positions.size(); }
};

struct Scenario {
  Room room;
  ApLayout aps;
  UserState users;
};

// Centers of an equal sqrt(n) x sqrt(n) subdivision of the ceiling, row by
// row along x. Throws std::invalid_argument if n is not a perfect square.
std::vector<Point3> square_grid(const Room& room, std::size_t n);

// Ceiling layout for arbitrary counts: the square grid when n is a perfect
// square, otherwise ceil(sqrt(n)) columns with the last, partial row spread
// evenly across the room width.
std::vector<Point3> ceiling_layout(const Room& room, std::size_t n);

ApLayout deploy_aps(const Room& room, std::size_t n_vap, std::size_t n_rap);

std::vector<Point3> place_users(const Room& room, std::size_t n_users, Rng& rng);

// Exactly round(rate * n) users are marked, chosen uniformly without
// replacement.
std::vector<bool> sample_blockage(std::size_t n_users, double blockage_rate, Rng& rng);

}  // namespace hybridcf
