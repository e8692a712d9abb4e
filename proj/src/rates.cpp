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

#include "hybridcf/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hybridcf/kernels.hpp"

namespace hybridcf {

namespace {

void check_association(const AssociationVector& b, std::size_t users) {
  if (b.size() != users) throw std::invalid_argument("association vector length mismatch");
  for (auto v : b) {
    if (v > 1) throw std::invalid_argument("association entries must be 0 or 1");
  }
}

struct Masks {
  std::vector<double> vlc;
  std::vector<double> rf;
};

Masks masks_of(const AssociationVector& b) {
  Masks m{std::vector<double>(b.size()), std::vector<double>(b.size())};
  for (std::size_t j = 0; j < b.size(); ++j) {
    m.vlc[j] = b[j] ? 1.0 : 0.0;
    m.rf[j] = b[j] ? 0.0 : 1.0;
  }
  return m;
}

}  // namespace

void NetworkConfig::validate() const {
  if (!(bandwidth_hz > 0.0) || !(ap_power_w > 0.0) || !(noise_psd > 0.0) ||
      !(conversion_factor > 0.0) || !(noise_factor > 0.0) || !(prelog > 0.0)) {
    throw std::invalid_argument("network configuration values must be positive");
  }
}

NetworkConfig NetworkConfig::vlc_defaults() {
  return NetworkConfig{40e6, 5.0, 1e-22, 0.53 * 10.0, 9.0, 0.5};
}

NetworkConfig NetworkConfig::rf_defaults() { return NetworkConfig{15e6, 5.0, 1e-19, 1.0, 1.0, 1.0}; }

double rate_from_sinr(double sinr, const NetworkConfig& cfg) noexcept {
  const double clamped = std::clamp(sinr, 0.0, kMaxSinr);
  return cfg.prelog * cfg.bandwidth_hz * std::log2(1.0 + clamped);
}

template <typename Scalar>
double network_sinr(std::size_t j, const Matrix<Scalar>& channel, const Matrix<Scalar>& precoder,
                    const ClusteringMatrix& clustering, std::span<const std::uint8_t> on_network,
                    const PowerAllocation& powers, const NetworkConfig& cfg) {
  const auto n_users = static_cast<std::size_t>(channel.rows());
  if (j >= n_users || on_network.size() != n_users) {
    throw std::invalid_argument("network_sinr: index or mask out of range");
  }
  if (!on_network[j] || channel.cols() == 0) return 0.0;

  const double amplitude = cfg.conversion_factor * std::sqrt(cfg.ap_power_w);
  const auto h = channel.row(static_cast<Eigen::Index>(j));
  auto term = [&](std::size_t l) {
    const Eigen::VectorXd selector =
        clustering.entries.row(static_cast<Eigen::Index>(l)).template cast<double>().transpose();
    const Scalar effective =
        (h * (selector.asDiagonal() * precoder.col(static_cast<Eigen::Index>(l))))(0);
    const double magnitude = amplitude * std::abs(effective) * std::sqrt(powers.per_user[l]);
    return magnitude * magnitude;
  };

  const double signal = term(j);
  double interference = 0.0;
  for (std::size_t l = 0; l < n_users; ++l) {
    if (l != j && on_network[l]) interference += term(l);
  }
  return std::min(signal / (interference + cfg.noise_term()), kMaxSinr);
}

template double network_sinr(std::size_t, const Matrix<double>&, const Matrix<double>&,
                             const ClusteringMatrix&, std::span<const std::uint8_t>,
                             const PowerAllocation&, const NetworkConfig&);
template double network_sinr(std::size_t, const Matrix<std::complex<double>>&,
                             const Matrix<std::complex<double>>&, const ClusteringMatrix&,
                             std::span<const std::uint8_t>, const PowerAllocation&, const NetworkConfig&);

double vlc_sinr(std::size_t j, const Eigen::MatrixXd& hv, const Eigen::MatrixXd& wv,
                const ClusteringMatrix& av, const AssociationVector& b, const PowerAllocation& pv,
                const NetworkConfig& cfg) {
  check_association(b, static_cast<std::size_t>(hv.rows()));
  return network_sinr<double>(j, hv, wv, av, b, pv, cfg);
}

double rf_sinr(std::size_t j, const Eigen::MatrixXcd& hr, const Eigen::MatrixXcd& wr,
               const ClusteringMatrix& ar, const AssociationVector& b, const PowerAllocation& pr,
               const NetworkConfig& cfg) {
  check_association(b, static_cast<std::size_t>(hr.rows()));
  AssociationVector on_rf(b.size());
  for (std::size_t l = 0; l < b.size(); ++l) on_rf[l] = 1 - b[l];
  return network_sinr<std::complex<double>>(j, hr, wr, ar, on_rf, pr, cfg);
}

template <typename Scalar>
LinkGains::LinkGains(const Matrix<Scalar>& channel, const ClusteringMatrix& clustering,
                     const Matrix<Scalar>& precoder, const PowerAllocation& powers,
                     const NetworkConfig& cfg)
    : users_(static_cast<std::size_t>(channel.rows())), cfg_(cfg) {
  if (clustering.users() != users_ || clustering.aps() != static_cast<std::size_t>(channel.cols()) ||
      precoder.rows() != channel.cols() || static_cast<std::size_t>(precoder.cols()) != users_ ||
      powers.per_user.size() != users_) {
    throw std::invalid_argument("LinkGains: dimension mismatch");
  }
  // effective(j, l) = h_j^T A_l w_l
  const Matrix<Scalar> masked =
      clustering.entries.transpose().template cast<double>().template cast<Scalar>().cwiseProduct(precoder);
  const Matrix<Scalar> effective = channel * masked;

  const double scale = cfg.conversion_factor * cfg.conversion_factor * cfg.ap_power_w;
  desired_.assign(users_, 0.0);
  cross_.assign(users_ * users_, 0.0);
  for (std::size_t j = 0; j < users_; ++j) {
    for (std::size_t l = 0; l < users_; ++l) {
      const double power = scale * std::norm(effective(static_cast<Eigen::Index>(j),
                                                       static_cast<Eigen::Index>(l))) *
                           powers.per_user[l];
      if (l == j) {
        desired_[j] = power;
      } else {
        cross_[j * users_ + l] = power;
      }
    }
  }
}

template LinkGains::LinkGains(const Matrix<double>&, const ClusteringMatrix&, const Matrix<double>&,
                              const PowerAllocation&, const NetworkConfig&);
template LinkGains::LinkGains(const Matrix<std::complex<double>>&, const ClusteringMatrix&,
                              const Matrix<std::complex<double>>&, const PowerAllocation&,
                              const NetworkConfig&);

double LinkGains::sinr(std::size_t j, std::span<const double> active) const {
  if (active.size() != users_ || j >= users_) throw std::invalid_argument("LinkGains::sinr: bad input");
  if (active[j] == 0.0) return 0.0;
  const double interference =
      kernels::dot(std::span<const double>(cross_).subspan(j * users_, users_), active);
  return std::min(desired_[j] / (interference + cfg_.noise_term()), kMaxSinr);
}

AssociationContext make_context(const ChannelMatrices& channels, ClusteringMatrix av,
                                ClusteringMatrix ar, const NetworkConfig& vlc_cfg,
                                const NetworkConfig& rf_cfg) {
  vlc_cfg.validate();
  rf_cfg.validate();
  AssociationContext ctx;
  ctx.hv = channels.vlc;
  ctx.hr = channels.rf;
  if (ctx.hv.rows() != ctx.hr.rows()) throw std::invalid_argument("channel user counts differ");
  ctx.av = std::move(av);
  ctx.ar = std::move(ar);
  ctx.wv = partial_zf<double>(ctx.hv, ctx.av);
  ctx.wr = partial_zf<std::complex<double>>(ctx.hr, ctx.ar);
  ctx.pv = allocate_powers<double>(ctx.wv);
  ctx.pr = allocate_powers<std::complex<double>>(ctx.wr);
  ctx.vlc = LinkGains(ctx.hv, ctx.av, ctx.wv, ctx.pv, vlc_cfg);
  ctx.rf = LinkGains(ctx.hr, ctx.ar, ctx.wr, ctx.pr, rf_cfg);
  return ctx;
}

double user_rate(std::size_t j, const AssociationVector& b, const AssociationContext& ctx) {
  check_association(b, ctx.users());
  if (j >= b.size()) throw std::out_of_range("user_rate: user index out of range");
  const Masks m = masks_of(b);
  return b[j] ? rate_from_sinr(ctx.vlc.sinr(j, m.vlc), ctx.vlc.config())
              : rate_from_sinr(ctx.rf.sinr(j, m.rf), ctx.rf.config());
}

std::vector<double> user_rates(const AssociationVector& b, const AssociationContext& ctx) {
  check_association(b, ctx.users());
  const Masks m = masks_of(b);
  std::vector<double> out(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) {
    out[j] = b[j] ? rate_from_sinr(ctx.vlc.sinr(j, m.vlc), ctx.vlc.config())
                  : rate_from_sinr(ctx.rf.sinr(j, m.rf), ctx.rf.config());
  }
  return out;
}

double sum_rate(const AssociationVector& b, const AssociationContext& ctx) {
  double total = 0.0;
  for (double r : user_rates(b, ctx)) total += r;
  return total;
}

RateReport evaluate(const AssociationVector& b, const AssociationContext& ctx) {
  check_association(b, ctx.users());
  const Masks m = masks_of(b);
  const std::size_t n = b.size();
  RateReport report;
  report.network_of_user = b;
  report.per_user_rate.resize(n);
  report.per_user_sinr.resize(n);
  report.per_user_vlc_rate.resize(n);
  report.per_user_rf_rate.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    // Each SINR is zero unless the user is on that network.
    const double gamma_v = ctx.vlc.sinr(j, m.vlc);
    const double gamma_r = ctx.rf.sinr(j, m.rf);
    report.per_user_vlc_rate[j] = b[j] * rate_from_sinr(gamma_v, ctx.vlc.config());
    report.per_user_rf_rate[j] = (1 - b[j]) * rate_from_sinr(gamma_r, ctx.rf.config());
    report.per_user_rate[j] = report.per_user_vlc_rate[j] + report.per_user_rf_rate[j];
    report.per_user_sinr[j] = b[j] ? gamma_v : gamma_r;
    report.sum_rate += report.per_user_rate[j];
  }
  return report;
}

}  // namespace hybridcf
