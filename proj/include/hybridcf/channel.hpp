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

#include <Eigen/Dense>

#include "hybridcf/geometry.hpp"
#include "hybridcf/scenario.hpp"

namespace hybridcf {

/// Optical front-end of the VLC link. Angles are in degrees, so that
/// table values such as 60 degrees map to exact trigonometric values.
struct VlcParams {
  double pd_area = 1e-4;  // m^2
  double half_intensity_angle_deg = 60.0;
  double fov_semi_angle_deg = 60.0;
  double refractive_index = 1.5;
  double optical_filter_gain = 1.0;
  double eo_factor = 0.53;  // A/W
  double oe_factor = 10.0;  // W/A

  /// Product of the two conversion factors; independent of which label
  /// carries which value.
  double conversion_factor() const noexcept { return eo_factor * oe_factor; }

  void validate() const;
};

/// Rician-faded, log-normally shadowed mmWave link.
struct RfParams {
  double rician_k = 10.0;  // linear LoS-to-scatter power ratio
  double ref_loss_db = 68.0;
  double ref_distance = 1.0;  // m
  double pathloss_exponent = 1.6;
  double shadow_sigma_db = 1.8;

  void validate() const;
};

struct ChannelMatrices {
  Eigen::MatrixXd vlc;   // users x VLC APs, nonnegative
  Eigen::MatrixXcd rf;   // users x RF APs
};

/// m = -1 / log2(cos(half-intensity angle)); angle in degrees in (0, 90).
double lambertian_order(double half_intensity_angle_deg);

/// n^2 / sin^2(FoV) inside the field of view, 0 outside; angles in degrees.
double concentrator_gain(double incidence_deg, double fov_semi_angle_deg, double refractive_index);

/// LoS Lambertian gain between a ceiling LED facing down and an upward PD,
/// so the radiance and incidence angles coincide. Zero when blocked or when
/// the incidence angle exceeds the field of view.
double vlc_channel_gain(const Point3& user, const Point3& ap, bool blocked, const VlcParams& params);

double path_loss_db(double distance, double shadow_db, const RfParams& params);

/// Deterministic core of the RF gain for a given shadowing draw and
/// scattered component.
std::complex<double> rf_channel_gain(double distance, double shadow_db,
                                     std::complex<double> scatter, const RfParams& params);

/// Draws shadowing X ~ N(0, sigma^2) dB and h_s ~ CN(0, 1), in that order.
std::complex<double> rf_channel_gain(const Point3& user, const Point3& ap, const RfParams& params,
                                     Rng& rng);

/// One draw per (user, AP) pair, users outer. Blocked users get all-zero
/// VLC rows.
ChannelMatrices build_channel_matrices(const Scenario& scenario, const VlcParams& vlc,
                                       const RfParams& rf, Rng& rng);

}  // namespace hybridcf
