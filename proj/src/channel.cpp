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

#include "hybridcf/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

namespace hybridcf {

void VlcParams::validate() const {
  if (!(pd_area > 0.0)) throw std::invalid_argument("PD area must be positive");
  if (!(half_intensity_angle_deg > 0.0 && half_intensity_angle_deg < 90.0)) {
    throw std::invalid_argument("half-intensity angle must lie in (0, 90) degrees");
  }
  if (!(fov_semi_angle_deg > 0.0 && fov_semi_angle_deg <= 90.0)) {
    throw std::invalid_argument("FoV semi-angle must lie in (0, 90] degrees");
  }
  if (!(refractive_index >= 1.0)) throw std::invalid_argument("refractive index must be >= 1");
  if (!(optical_filter_gain > 0.0)) throw std::invalid_argument("optical filter gain must be positive");
}

void RfParams::validate() const {
  if (!(rician_k >= 0.0)) throw std::invalid_argument("Rician K must be nonnegative");
  if (!(ref_distance > 0.0)) throw std::invalid_argument("reference distance must be positive");
  if (!(pathloss_exponent > 0.0)) throw std::invalid_argument("path-loss exponent must be positive");
  if (!(shadow_sigma_db >= 0.0)) throw std::invalid_argument("shadowing sigma must be nonnegative");
}

double lambertian_order(double half_intensity_angle_deg) {
  if (!(half_intensity_angle_deg > 0.0 && half_intensity_angle_deg < 90.0)) {
    throw std::invalid_argument("half-intensity angle must lie in (0, 90) degrees");
  }
  return -1.0 / std::log2(boost::math::cos_pi(half_intensity_angle_deg / 180.0));
}

double concentrator_gain(double incidence_deg, double fov_semi_angle_deg, double refractive_index) {
  if (incidence_deg > fov_semi_angle_deg) return 0.0;
  const double s = boost::math::sin_pi(fov_semi_angle_deg / 180.0);
  return refractive_index * refractive_index / (s * s);
}

double vlc_channel_gain(const Point3& user, const Point3& ap, bool blocked,
                        const VlcParams& params) {
  const double d = distance(user, ap);
  if (d == 0.0) throw std::invalid_argument("VLC gain: user and AP coincide");
  if (!(ap.z > user.z)) throw std::invalid_argument("VLC gain: AP must be above the user");
  if (blocked) return 0.0;

  const double cos_angle = (ap.z - user.z) / d;
  const double incidence_deg = std::acos(std::min(1.0, cos_angle)) * 180.0 / kPi;
  const double f = concentrator_gain(incidence_deg, params.fov_semi_angle_deg, params.refractive_index);
  if (f == 0.0) return 0.0;

  const double m = lambertian_order(params.half_intensity_angle_deg);
  return (m + 1.0) * params.pd_area / (2.0 * kPi * d * d) * std::pow(cos_angle, m) *
         params.optical_filter_gain * f * cos_angle;
}

double path_loss_db(double distance, double shadow_db, const RfParams& params) {
  if (!(distance > 0.0)) throw std::invalid_argument("path loss: distance must be positive");
  return params.ref_loss_db +
         10.0 * params.pathloss_exponent * std::log10(distance / params.ref_distance) + shadow_db;
}

std::complex<double> rf_channel_gain(double distance, double shadow_db,
                                     std::complex<double> scatter, const RfParams& params) {
  const double loss_db = path_loss_db(distance, shadow_db, params);
  const double amplitude = std::sqrt(std::pow(10.0, -loss_db / 10.0));
  const std::complex<double> los = std::sqrt(0.5) * std::complex<double>(1.0, 1.0);
  const double k = params.rician_k;
  if (std::isinf(k)) return amplitude * los;
  return amplitude * (std::sqrt(k / (k + 1.0)) * los + std::sqrt(1.0 / (k + 1.0)) * scatter);
}

std::complex<double> rf_channel_gain(const Point3& user, const Point3& ap, const RfParams& params,
                                     Rng& rng) {
  const double d = distance(user, ap);
  if (d == 0.0) throw std::invalid_argument("RF gain: user and AP coincide");
  std::normal_distribution<double> shadow(0.0, params.shadow_sigma_db);
  std::normal_distribution<double> component(0.0, std::sqrt(0.5));
  const double x = params.shadow_sigma_db > 0.0 ? shadow(rng) : 0.0;
  const double re = component(rng);
  const double im = component(rng);
  return rf_channel_gain(d, x, {re, im}, params);
}

ChannelMatrices build_channel_matrices(const Scenario& scenario, const VlcParams& vlc,
                                       const RfParams& rf, Rng& rng) {
  vlc.validate();
  rf.validate();
  const auto& users = scenario.users;
  if (users.vlc_blocked.size() != users.positions.size()) {
    throw std::invalid_argument("blockage mask length does not match user count");
  }
  const auto n_users = static_cast<Eigen::Index>(users.size());
  const auto n_vap = static_cast<Eigen::Index>(scenario.aps.vlc_positions.size());
  const auto n_rap = static_cast<Eigen::Index>(scenario.aps.rf_positions.size());

  ChannelMatrices out{Eigen::MatrixXd::Zero(n_users, n_vap), Eigen::MatrixXcd::Zero(n_users, n_rap)};
  for (Eigen::Index j = 0; j < n_users; ++j) {
    const auto& user = users.positions[static_cast<std::size_t>(j)];
    const bool blocked = users.vlc_blocked[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < n_vap; ++i) {
      out.vlc(j, i) =
          vlc_channel_gain(user, scenario.aps.vlc_positions[static_cast<std::size_t>(i)], blocked, vlc);
    }
    for (Eigen::Index i = 0; i < n_rap; ++i) {
      out.rf(j, i) = rf_channel_gain(user, scenario.aps.rf_positions[static_cast<std::size_t>(i)], rf, rng);
    }
  }
  return out;
}

}  // namespace hybridcf
