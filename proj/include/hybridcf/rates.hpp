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
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hybridcf/channel.hpp"
#include "hybridcf/clustering.hpp"
#include "hybridcf/precoding.hpp"

namespace hybridcf {

/// b_j = 1 puts user j on the VLC network, b_j = 0 on the RF network.
using AssociationVector = std::vector<std::uint8_t>;

/// Per-network link budget. The noise variance is the PSD integrated over
/// the band; `noise_factor` multiplies it in the SINR denominator (9 for the
/// VLC network, 1 for RF).
struct NetworkConfig {
  double bandwidth_hz = 0.0;
  double ap_power_w = 0.0;
  double noise_psd = 0.0;  // W/Hz
  double conversion_factor = 1.0;
  double noise_factor = 1.0;
  double prelog = 1.0;  // 1/2 under intensity modulation

  double noise_variance() const noexcept { return noise_psd * bandwidth_hz; }
  double noise_term() const noexcept { return noise_factor * noise_variance(); }
  void validate() const;

  static NetworkConfig vlc_defaults();
  static NetworkConfig rf_defaults();
};

inline constexpr double kMaxSinr = 1e30;

double rate_from_sinr(double sinr, const NetworkConfig& cfg) noexcept;

/// SINR of user j evaluated straight from channel, precoder, clustering and
/// powers. `on_network[l]` is 1 iff user l is served by this network.
/// Returns 0 when user j itself is not on the network.
template <typename Scalar>
double network_sinr(std::size_t j, const Matrix<Scalar>& channel, const Matrix<Scalar>& precoder,
                    const ClusteringMatrix& clustering, std::span<const std::uint8_t> on_network,
                    const PowerAllocation& powers, const NetworkConfig& cfg);

double vlc_sinr(std::size_t j, const Eigen::MatrixXd& hv, const Eigen::MatrixXd& wv,
                const ClusteringMatrix& av, const AssociationVector& b, const PowerAllocation& pv,
                const NetworkConfig& cfg);

double rf_sinr(std::size_t j, const Eigen::MatrixXcd& hr, const Eigen::MatrixXcd& wr,
               const ClusteringMatrix& ar, const AssociationVector& b, const PowerAllocation& pr,
               const NetworkConfig& cfg);

/// Received power terms |rho sqrt(rho_f) h_j^T A_l w_l sqrt(P_l)|^2 for all
/// (j, l), precomputed once per trial so that SINR evaluation for any
/// association reduces to masked row sums.
class LinkGains {
 public:
  LinkGains() = default;

  template <typename Scalar>
  LinkGains(const Matrix<Scalar>& channel, const ClusteringMatrix& clustering,
            const Matrix<Scalar>& precoder, const PowerAllocation& powers,
            const NetworkConfig& cfg);

  std::size_t users() const noexcept { return users_; }
  double desired(std::size_t j) const { return desired_[j]; }
  double cross(std::size_t j, std::size_t l) const { return cross_[j * users_ + l]; }
  const NetworkConfig& config() const noexcept { return cfg_; }

  /// `active[l]` is 1.0 for users on this network and 0.0 otherwise.
  /// Returns 0 when active[j] == 0.
  double sinr(std::size_t j, std::span<const double> active) const;

 private:
  std::size_t users_ = 0;
  std::vector<double> desired_;
  std::vector<double> cross_;  // row-major, zero diagonal
  NetworkConfig cfg_;
};

/// Everything one association solve needs for a trial: channels, clustering,
/// precoders and powers for both networks. Immutable once built.
struct AssociationContext {
  Eigen::MatrixXd hv;
  Eigen::MatrixXcd hr;
  ClusteringMatrix av;
  ClusteringMatrix ar;
  Eigen::MatrixXd wv;
  Eigen::MatrixXcd wr;
  PowerAllocation pv;
  PowerAllocation pr;
  LinkGains vlc;
  LinkGains rf;

  std::size_t users() const noexcept { return static_cast<std::size_t>(hv.rows()); }
};

/// Builds precoders and powers from the channels and clustering. They do
/// not depend on the association, so this runs once per trial.
AssociationContext make_context(const ChannelMatrices& channels, ClusteringMatrix av,
                                ClusteringMatrix ar, const NetworkConfig& vlc_cfg,
                                const NetworkConfig& rf_cfg);

struct RateReport {
  std::vector<double> per_user_rate;
  std::vector<double> per_user_sinr;
  std::vector<double> per_user_vlc_rate;
  std::vector<double> per_user_rf_rate;
  AssociationVector network_of_user;
  double sum_rate = 0.0;
};

double user_rate(std::size_t j, const AssociationVector& b, const AssociationContext& ctx);
std::vector<double> user_rates(const AssociationVector& b, const AssociationContext& ctx);
double sum_rate(const AssociationVector& b, const AssociationContext& ctx);
RateReport evaluate(const AssociationVector& b, const AssociationContext& ctx);

}  // namespace hybridcf
