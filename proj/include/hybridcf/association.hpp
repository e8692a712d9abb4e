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
#include <span>
#include <vector>

#include "hybridcf/geometry.hpp"
#include "hybridcf/rates.hpp"

namespace hybridcf {

struct SolveTrace {
  std::size_t iterations = 0;   // sampler steps (Gibbs) or sweeps (iterative)
  std::size_t changes = 0;      // times the association vector changed
  std::size_t evaluations = 0;  // sum-rate evaluations
  // Gibbs: sum-rate of the initial vector and of every sampled vector.
  // Iterative: sum-rate of the initial vector and after every accepted flip.
  std::vector<double> sum_rates;
  bool converged = false;
};

struct SolveResult {
  AssociationVector b;
  SolveTrace trace;
  double sum_rate = 0.0;
};

enum class GibbsWeighting {
  kScoreTransform,  // min-max normalize, divide by total, square
  kExponential,     // exp(-beta / sum-rate)
};

struct GibbsOptions {
  double beta = 1e4;
  std::size_t max_iterations = 500;
  GibbsWeighting weighting = GibbsWeighting::kScoreTransform;
};

/// Sampling distribution over the N_u + 1 candidates (incumbent first, then
/// every single-bit flip). For the exponential weighting, `beta` is the
/// effective temperature (already scaled by the caller).
std::vector<double> gibbs_weights(std::span<const double> candidate_sum_rates,
                                  GibbsWeighting weighting, double beta);

AssociationVector associate_random(std::size_t n_users, Rng& rng);

SolveResult associate_gibbs(const AssociationContext& ctx, const GibbsOptions& options, Rng& rng);

SolveResult associate_iterative(const AssociationContext& ctx);

inline constexpr std::size_t kMaxExhaustiveUsers = 20;

/// Best of all 2^N_u vectors; ties go to the smallest vector read as a
/// little-endian integer. Throws std::invalid_argument above 20 users.
SolveResult associate_exhaustive(const AssociationContext& ctx);

}  // namespace hybridcf
