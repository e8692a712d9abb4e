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

#include "hybridcf/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>

#include "hybridcf/kernels.hpp"

namespace hybridcf {

namespace {

template <typename Scalar>
Scalar conjugate(Scalar v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return v;
  } else {
    return std::conj(v);
  }
}

std::vector<std::size_t> support_of(const ClusteringMatrix& a, std::size_t user) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < a.aps(); ++i) {
    if (a.serves(user, i)) out.push_back(i);
  }
  return out;
}

// Doubles viewed as a flat span; std::complex<double> is layout-compatible
// with double[2].
template <typename Scalar>
std::span<const double> as_doubles(const Scalar* data, std::size_t count) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return {data, count};
  } else {
    return {reinterpret_cast<const double*>(data), 2 * count};
  }
}

}  // namespace

std::vector<std::size_t> shared_ap_set(const ClusteringMatrix& a, std::size_t user) {
  if (user >= a.users()) throw std::out_of_range("shared_ap_set: user index out of range");
  std::vector<std::size_t> out;
  const auto row_j = a.entries.row(static_cast<Eigen::Index>(user));
  for (std::size_t l = 0; l < a.users(); ++l) {
    const auto row_l = a.entries.row(static_cast<Eigen::Index>(l));
    if ((row_j.array() * row_l.array()).any()) out.push_back(l);
  }
  return out;
}

template <typename Scalar>
Matrix<Scalar> partial_zf(const Matrix<Scalar>& channel, const ClusteringMatrix& a) {
  if (static_cast<std::size_t>(channel.rows()) != a.users() ||
      static_cast<std::size_t>(channel.cols()) != a.aps()) {
    throw std::invalid_argument("partial_zf: channel and clustering dimensions differ");
  }
  if (!channel.allFinite()) throw std::invalid_argument("partial_zf: non-finite channel entry");

  const std::size_t n_users = a.users();
  Matrix<Scalar> precoder = Matrix<Scalar>::Zero(channel.cols(), channel.rows());

  for (std::size_t j = 0; j < n_users; ++j) {
    const auto shared = shared_ap_set(a, j);
    if (shared.empty()) continue;
    const auto support = support_of(a, j);

    // Clustered block X_j: rows are serving APs of j, columns users in S_j.
    Matrix<Scalar> block(static_cast<Eigen::Index>(support.size()),
                         static_cast<Eigen::Index>(shared.size()));
    Eigen::Index self = 0;
    for (std::size_t c = 0; c < shared.size(); ++c) {
      if (shared[c] == j) self = static_cast<Eigen::Index>(c);
      for (std::size_t r = 0; r < support.size(); ++r) {
        block(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = conjugate(
            channel(static_cast<Eigen::Index>(shared[c]), static_cast<Eigen::Index>(support[r])));
      }
    }

    Eigen::JacobiSVD<Matrix<Scalar>> svd(block, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    if (sigma.size() == 0 || sigma(0) == 0.0) continue;
    const double cutoff = sigma(0) * kRankTolerance;

    // w = U * Sigma^+ * (row `self` of V)^H, restricted to the support.
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coeffs(sigma.size());
    for (Eigen::Index k = 0; k < sigma.size(); ++k) {
      coeffs(k) = sigma(k) > cutoff ? conjugate(svd.matrixV()(self, k)) / sigma(k) : Scalar(0);
    }
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1> w = svd.matrixU() * coeffs;
    for (std::size_t r = 0; r < support.size(); ++r) {
      precoder(static_cast<Eigen::Index>(support[r]), static_cast<Eigen::Index>(j)) =
          w(static_cast<Eigen::Index>(r));
    }
  }
  return precoder;
}

template <typename Scalar>
std::vector<double> ap_loads(const Matrix<Scalar>& precoder) {
  const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rows = precoder;
  std::vector<double> loads(static_cast<std::size_t>(rows.rows()), 0.0);
  const auto width = static_cast<std::size_t>(rows.cols());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    loads[static_cast<std::size_t>(i)] = kernels::sum_squares(as_doubles(rows.row(i).data(), width));
  }
  return loads;
}

template <typename Scalar>
PowerAllocation allocate_powers(const Matrix<Scalar>& precoder) {
  if (!precoder.allFinite()) throw std::invalid_argument("allocate_powers: non-finite precoder");
  const auto loads = ap_loads(precoder);
  PowerAllocation out;
  out.max_ap_load = loads.empty() ? 0.0 : *std::max_element(loads.begin(), loads.end());
  // Back off by kBudgetMargin so the busiest AP stays within budget however
  // its load is re-summed (rounding error grows with the number of users).
  double p = out.max_ap_load > 0.0 ? (1.0 - kBudgetMargin) / out.max_ap_load : 0.0;
  while (p > 0.0 && p * out.max_ap_load > 1.0 - kBudgetMargin) p = std::nextafter(p, 0.0);
  out.per_user.assign(static_cast<std::size_t>(precoder.cols()), p);
  return out;
}

template Matrix<double> partial_zf(const Matrix<double>&, const ClusteringMatrix&);
template Matrix<std::complex<double>> partial_zf(const Matrix<std::complex<double>>&,
                                                 const ClusteringMatrix&);
template std::vector<double> ap_loads(const Matrix<double>&);
template std::vector<double> ap_loads(const Matrix<std::complex<double>>&);
template PowerAllocation allocate_powers(const Matrix<double>&);
template PowerAllocation allocate_powers(const Matrix<std::complex<double>>&);

}  // namespace hybridcf
