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

#include "hybridcf/association.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hybridcf {

std::vector<double> gibbs_weights(std::span<const double> candidate_sum_rates,
                                  GibbsWeighting weighting, double beta) {
  const std::size_t n = candidate_sum_rates.size();
  if (n == 0) throw std::invalid_argument("gibbs_weights: no candidates");
  std::vector<double> w(n, 1.0 / static_cast<double>(n));

  if (weighting == GibbsWeighting::kScoreTransform) {
    const auto [lo_it, hi_it] = std::minmax_element(candidate_sum_rates.begin(), candidate_sum_rates.end());
    const double lo = *lo_it;
    const double span = *hi_it - lo;
    if (!(span > 0.0)) return w;
    for (std::size_t k = 0; k < n; ++k) w[k] = (candidate_sum_rates[k] - lo) / span;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& v : w) {
      v /= total;
      v *= v;
    }
  } else {
    // exp(-beta / R), shifted by the largest exponent to stay finite.
    std::vector<double> exponent(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double r = candidate_sum_rates[k];
      exponent[k] = r > 0.0 ? -beta / r : -std::numeric_limits<double>::infinity();
    }
    const double top = *std::max_element(exponent.begin(), exponent.end());
    if (!std::isfinite(top)) return w;
    for (std::size_t k = 0; k < n; ++k) w[k] = std::exp(exponent[k] - top);
  }
  const double norm = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& v : w) v /= norm;
  return w;
}

AssociationVector associate_random(std::size_t n_users, Rng& rng) {
  if (n_users == 0) throw std::invalid_argument("at least one user is required");
  std::bernoulli_distribution coin(0.5);
  AssociationVector b(n_users);
  for (auto& v : b) v = coin(rng) ? 1 : 0;
  return b;
}

namespace {

std::size_t sample_index(std::span<const double> probabilities, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t k = 0; k < probabilities.size(); ++k) {
    if (probabilities[k] <= 0.0) continue;
    last_positive = k;
    cumulative += probabilities[k];
    if (u < cumulative) return k;
  }
  return last_positive;
}

}  // namespace

SolveResult associate_gibbs(const AssociationContext& ctx, const GibbsOptions& options, Rng& rng) {
  if (options.max_iterations == 0) throw std::invalid_argument("Gibbs: T_max must be at least 1");
  if (!(options.beta > 0.0)) throw std::invalid_argument("Gibbs: beta must be positive");
  const std::size_t n = ctx.users();

  SolveResult result;
  AssociationVector b = associate_random(n, rng);
  double current = sum_rate(b, ctx);
  result.trace.evaluations = 1;
  result.trace.sum_rates.push_back(current);
  AssociationVector best = b;
  double best_rate = current;
  const double beta = options.beta * current;

  std::vector<double> rates(n + 1);
  while (result.trace.iterations < options.max_iterations && !result.trace.converged) {
    ++result.trace.iterations;
    rates[0] = current;
    for (std::size_t m = 0; m < n; ++m) {
      b[m] ^= 1;
      rates[m + 1] = sum_rate(b, ctx);
      b[m] ^= 1;
    }
    result.trace.evaluations += n;

    const auto probabilities = gibbs_weights(rates, options.weighting, beta);
    const std::size_t pick = sample_index(probabilities, rng);
    if (pick == 0) {
      result.trace.converged = true;
    } else {
      b[pick - 1] ^= 1;
      current = rates[pick];
      ++result.trace.changes;
    }
    result.trace.sum_rates.push_back(current);
    if (current > best_rate) {
      best_rate = current;
      best = b;
    }
  }

  if (result.trace.converged) {
    result.b = std::move(b);
    result.sum_rate = current;
  } else {
    result.b = std::move(best);
    result.sum_rate = best_rate;
  }
  return result;
}

SolveResult associate_iterative(const AssociationContext& ctx) {
  const std::size_t n = ctx.users();
  SolveResult result;
  AssociationVector b(n, 1);
  double best = sum_rate(b, ctx);
  result.trace.evaluations = 1;
  result.trace.sum_rates.push_back(best);

  std::vector<std::size_t> order(n);
  while (!result.trace.converged) {
    ++result.trace.iterations;
    std::size_t changes = 0;
    const auto rates = user_rates(b, ctx);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return rates[l] < rates[r]; });
    for (std::size_t j : order) {
      b[j] ^= 1;
      const double candidate = sum_rate(b, ctx);
      ++result.trace.evaluations;
      if (candidate > best) {
        best = candidate;
        ++changes;
        result.trace.sum_rates.push_back(best);
      } else {
        b[j] ^= 1;
      }
    }
    result.trace.changes += changes;
    if (changes == 0) result.trace.converged = true;
  }
  result.b = std::move(b);
  result.sum_rate = best;
  return result;
}

SolveResult associate_exhaustive(const AssociationContext& ctx) {
  const std::size_t n = ctx.users();
  if (n > kMaxExhaustiveUsers) {
    throw std::invalid_argument("exhaustive search limited to " +
                                std::to_string(kMaxExhaustiveUsers) + " users, got " +
                                std::to_string(n));
  }
  SolveResult result;
  AssociationVector b(n, 0);
  double best = -1.0;
  std::uint64_t best_code = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < count; ++code) {
    for (std::size_t j = 0; j < n; ++j) b[j] = static_cast<std::uint8_t>((code >> j) & 1u);
    const double rate = sum_rate(b, ctx);
    if (rate > best) {
      best = rate;
      best_code = code;
    }
  }
  for (std::size_t j = 0; j < n; ++j) b[j] = static_cast<std::uint8_t>((best_code >> j) & 1u);
  result.b = std::move(b);
  result.sum_rate = best;
  result.trace.evaluations = count;
  result.trace.iterations = 1;
  result.trace.converged = true;
  result.trace.sum_rates.push_back(best);
  return result;
}

}  // namespace hybridcf
