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

// Experiment configuration files.
//
// Flat INI-style text: `key = value` lines grouped under [section] headers;
// `#` or `;` start a comment line. Lists are comma separated. Every key is
// optional and unknown sections or keys are rejected. An empty file yields
// the baseline setup.
//
//   [experiment]  name, trials, seed, threads, output (sweep | cdf),
//                 systems (hybrid, vlc-only, rf-only),
//                 solvers (iterative, gibbs, random, exhaustive),
//                 clustering (none, A1, A2)
//   [sweep]       param (n_users | total_aps | fov_deg), values
//   [scenario]    n_users (one value, or a list for non-user sweeps),
//                 n_vap, n_rap, room_length, room_width, room_height,
//                 user_altitude, blockage_rate
//   [vlc]         pd_area_m2, half_intensity_angle_deg, fov_semi_angle_deg,
//                 refractive_index, optical_filter_gain, eo_factor,
//                 oe_factor, bandwidth_hz, ap_power_w, noise_psd,
//                 noise_factor
//   [rf]          rician_k, ref_loss_db, ref_distance_m, pathloss_exponent,
//                 shadow_sigma_db, bandwidth_hz, ap_power_w, noise_psd
//   [clustering]  vlc_d_max, rf_d_max, vlc_n_max, rf_n_max
//   [gibbs]       beta, max_iterations, weighting (transform | exponential)

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hybridcf/harness.hpp"

namespace hybridcf {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::string_view> preset_names();

/// Built-in experiment designs fig4 ... fig13. Throws ConfigError for an
/// unknown name.
ExperimentConfig preset(std::string_view name);

void apply_config_text(ExperimentConfig& cfg, const std::string& text);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

}  // namespace hybridcf
