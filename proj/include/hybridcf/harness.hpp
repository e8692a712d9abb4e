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
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hybridcf/association.hpp"
#include "hybridcf/channel.hpp"
#include "hybridcf/clustering.hpp"
#include "hybridcf/rates.hpp"
#include "hybridcf/scenario.hpp"

namespace hybridcf {

enum class SystemKind { kHybrid, kVlcOnly, kRfOnly };
// kFixed marks standalone systems, whose association is forced.
enum class SolverKind { kGibbs, kIterative, kRandom, kExhaustive, kFixed };
enum class SweepParam { kUsers, kTotalAps, kFovDeg };
enum class OutputKind { kSweep, kCdf };

std::string_view to_string(SystemKind v) noexcept;
std::string_view to_string(SolverKind v) noexcept;
std::string_view to_string(ClusteringMode v) noexcept;
std::string_view to_string(SweepParam v) noexcept;

/// Defaults reproduce the baseline indoor setup (10 x 10 x 3 m room, 16 VLC
/// and 9 RF APs, 10% of users blocked).
struct PhysicalParams {
  Room room;
  VlcParams vlc;
  RfParams rf;
  NetworkConfig vlc_net = NetworkConfig::vlc_defaults();
  NetworkConfig rf_net = NetworkConfig::rf_defaults();
  double blockage_rate = 0.1;
};

struct ClusteringParams {
  double vlc_d_max = 4.0;
  double rf_d_max = 6.0;
  std::size_t vlc_n_max = 3;
  std::size_t rf_n_max = 5;
};

struct TrialConfig {
  PhysicalParams physics;
  std::size_t n_users = 20;
  std::size_t n_vap = 16;
  std::size_t n_rap = 9;
  SystemKind system = SystemKind::kHybrid;
  SolverKind solver = SolverKind::kIterative;
  ClusteringMode clustering = ClusteringMode::kNone;
  ClusteringParams clustering_params;
  GibbsOptions gibbs;
  std::uint64_t base_seed = 1;

  /// Throws std::invalid_argument when the trial cannot be built.
  void validate() const;
};

inline std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t trial_index) noexcept {
  return base_seed ^ static_cast<std::uint64_t>(trial_index);
}

/// Random streams derived from each trial seed. Users, blockage and channels
/// draw from separate streams so systems compared on the same trial see the
/// same user drop.
enum Stream : std::uint32_t { kUserStream = 0, kBlockageStream = 1, kChannelStream = 2, kSolverStream = 3 };

/// The pipeline up to (not including) association: scenario, channels,
/// clustering, precoders and powers.
struct TrialSetup {
  std::uint64_t seed = 0;
  Scenario scenario;
  ChannelMatrices channels;
  AssociationContext context;
};

TrialSetup prepare_trial(const TrialConfig& cfg, std::size_t trial_index);

struct TrialResult {
  std::uint64_t seed = 0;
  AssociationVector b;
  RateReport report;
  SolveTrace trace;
};

/// Solves association on a prepared trial.
TrialResult solve_trial(const TrialConfig& cfg, const TrialSetup& setup);

TrialResult run_trial(const TrialConfig& cfg, std::size_t trial_index);

/// Row of the AP-scaling table used by the total-AP sweep.
struct RoomScaling {
  std::size_t total_aps;
  std::size_t n_vap;
  std::size_t n_rap;
  double side;  // square room, meters
};

std::span<const RoomScaling> room_scaling_table() noexcept;

struct Series {
  SystemKind system = SystemKind::kHybrid;
  SolverKind solver = SolverKind::kIterative;
  ClusteringMode clustering = ClusteringMode::kNone;

  friend bool operator==(const Series&, const Series&) = default;
};

struct ExperimentConfig {
  std::string name = "baseline";
  TrialConfig base;
  std::size_t trials = 100;
  SweepParam sweep_param = SweepParam::kUsers;
  // Empty: a single point at the base configuration's value.
  std::vector<double> sweep_values;
  // Extra user-count dimension for sweeps over something other than users.
  // Empty: base.n_users.
  std::vector<std::size_t> user_counts;
  std::vector<SystemKind> systems{SystemKind::kHybrid};
  std::vector<SolverKind> solvers{SolverKind::kIterative};
  std::vector<ClusteringMode> clusterings{ClusteringMode::kNone};
  OutputKind output = OutputKind::kSweep;
  unsigned threads = 0;  // 0: one per hardware thread

  /// systems x solvers x clusterings; standalone systems collapse to a
  /// single `fixed` solver entry per clustering.
  std::vector<Series> series() const;
  std::vector<double> resolved_sweep_values() const;
  std::vector<std::size_t> resolved_user_counts() const;

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

/// Trial configuration for one sweep point, user count and series.
TrialConfig trial_config_for(const ExperimentConfig& cfg, double sweep_value, std::size_t n_users,
                             const Series& series);

struct SweepRow {
  std::string sweep_param;
  double sweep_value = 0.0;
  Series series;
  std::size_t n_users = 0;
  double mean_sum_rate = 0.0;
  std::size_t trials = 0;
  double mean_iterations = 0.0;
  double mean_changes = 0.0;
};

struct CdfPool {
  Series series;
  std::size_t n_users = 0;
  std::vector<double> rates;  // per-user rates of every trial, trial-major
};

struct ExperimentReport {
  std::vector<SweepRow> rows;
  std::vector<CdfPool> pools;
};

/// Raised when a trial fails; the message names the sweep point and seed.
class TrialFailure : public std::runtime_error {
 public:
  TrialFailure(const std::string& what, std::uint64_t seed)
      : std::runtime_error(what), seed_(seed) {}
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Empirical CDF: sorted values paired with (i + 1) / n. Throws on an empty
/// pool.
std::vector<std::pair<double, double>> compute_cdf(std::span<const double> pool);

/// Shortest round-trip decimal representation, '.' separator.
std::string format_number(double value);

inline constexpr std::string_view kSweepHeader =
    "sweep_param,sweep_value,system,solver,clustering,mean_sum_rate_bps,trials,mean_iterations,"
    "mean_changes";
inline constexpr std::string_view kCdfHeader = "system,solver,clustering,n_users,rate_bps,cdf";

void write_sweep_csv(const ExperimentReport& report, std::ostream& out);
void write_cdf_csv(const ExperimentReport& report, std::ostream& out);

/// Writes the sweep or CDF table to `path`. Throws std::runtime_error naming
/// the path on I/O failure.
void write_report(const ExperimentReport& report, OutputKind kind, const std::filesystem::path& path);

}  // namespace hybridcf
