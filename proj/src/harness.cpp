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

#include "hybridcf/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

namespace hybridcf {

std::string_view to_string(SystemKind v) noexcept {
  switch (v) {
    case SystemKind::kHybrid:
      return "hybrid";
    case SystemKind::kVlcOnly:
      return "vlc-only";
    case SystemKind::kRfOnly:
      return "rf-only";
  }
  return "?";
}

std::string_view to_string(SolverKind v) noexcept {
  switch (v) {
    case SolverKind::kGibbs:
      return "gibbs";
    case SolverKind::kIterative:
      return "iterative";
    case SolverKind::kRandom:
      return "random";
    case SolverKind::kExhaustive:
      return "exhaustive";
    case SolverKind::kFixed:
      return "fixed";
  }
  return "?";
}

std::string_view to_string(ClusteringMode v) noexcept {
  switch (v) {
    case ClusteringMode::kNone:
      return "none";
    case ClusteringMode::kDistance:
      return "A1";
    case ClusteringMode::kTopN:
      return "A2";
  }
  return "?";
}

std::string_view to_string(SweepParam v) noexcept {
  switch (v) {
    case SweepParam::kUsers:
      return "n_users";
    case SweepParam::kTotalAps:
      return "total_aps";
    case SweepParam::kFovDeg:
      return "fov_deg";
  }
  return "?";
}

namespace {

ClusteringMatrix build_clustering(ClusteringMode mode, const std::vector<Point3>& users,
                                  const std::vector<Point3>& aps, double d_max, std::size_t n_max) {
  switch (mode) {
    case ClusteringMode::kDistance:
      return cluster_distance(users, aps, d_max);
    case ClusteringMode::kTopN:
      return cluster_top_n(users, aps, n_max);
    case ClusteringMode::kNone:
      break;
  }
  return cluster_full(users.size(), aps.size());
}

constexpr std::array<RoomScaling, 7> kRoomScaling{{
    {25, 16, 9, 10.0},
    {32, 16, 16, 11.0},
    {45, 36, 9, 14.0},
    {65, 49, 16, 16.0},
    {80, 64, 16, 19.0},
    {97, 81, 16, 22.0},
    {125, 100, 25, 25.0},
}};

// Runs body(i) for i in [0, n) on up to `threads` workers and rethrows the
// failure with the lowest index.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::span<const RoomScaling> room_scaling_table() noexcept { return kRoomScaling; }

void TrialConfig::validate() const {
  physics.room.validate();
  physics.vlc.validate();
  physics.rf.validate();
  physics.vlc_net.validate();
  physics.rf_net.validate();
  if (!(physics.blockage_rate >= 0.0 && physics.blockage_rate <= 1.0)) {
    throw std::invalid_argument("blockage rate must lie in [0, 1]");
  }
  if (n_users == 0) throw std::invalid_argument("at least one user is required");
  if (system == SystemKind::kHybrid) {
    // Hybrid deployments use square grids for both networks.
    (void)deploy_aps(physics.room, n_vap, n_rap);
  } else if (n_vap + n_rap == 0) {
    throw std::invalid_argument("standalone systems need at least one AP");
  }
  if (clustering == ClusteringMode::kDistance &&
      !(clustering_params.vlc_d_max > 0.0 && clustering_params.rf_d_max > 0.0)) {
    throw std::invalid_argument("clustering distances must be positive");
  }
  if (clustering == ClusteringMode::kTopN &&
      (clustering_params.vlc_n_max == 0 || clustering_params.rf_n_max == 0)) {
    throw std::invalid_argument("clustering AP user limits must be at least 1");
  }
  if (solver == SolverKind::kGibbs && (gibbs.max_iterations == 0 || !(gibbs.beta > 0.0))) {
    throw std::invalid_argument("Gibbs needs max_iterations >= 1 and beta > 0");
  }
  if (system == SystemKind::kHybrid && solver == SolverKind::kFixed) {
    throw std::invalid_argument("the hybrid system needs an association solver");
  }
}

TrialSetup prepare_trial(const TrialConfig& cfg, std::size_t trial_index) {
  cfg.validate();
  const auto& physics = cfg.physics;

  TrialSetup setup;
  setup.seed = trial_seed(cfg.base_seed, trial_index);
  auto& scenario = setup.scenario;
  scenario.room = physics.room;

  const std::size_t total_aps = cfg.n_vap + cfg.n_rap;
  switch (cfg.system) {
    case SystemKind::kHybrid:
      scenario.aps = deploy_aps(physics.room, cfg.n_vap, cfg.n_rap);
      break;
    case SystemKind::kVlcOnly:
      scenario.aps.vlc_positions = ceiling_layout(physics.room, total_aps);
      break;
    case SystemKind::kRfOnly:
      scenario.aps.rf_positions = ceiling_layout(physics.room, total_aps);
      break;
  }

  Rng user_rng = make_stream(setup.seed, kUserStream);
  scenario.users.positions = place_users(physics.room, cfg.n_users, user_rng);
  Rng blockage_rng = make_stream(setup.seed, kBlockageStream);
  scenario.users.vlc_blocked = sample_blockage(cfg.n_users, physics.blockage_rate, blockage_rng);
  Rng channel_rng = make_stream(setup.seed, kChannelStream);
  setup.channels = build_channel_matrices(scenario, physics.vlc, physics.rf, channel_rng);

  const auto& cp = cfg.clustering_params;
  ClusteringMatrix av = build_clustering(cfg.clustering, scenario.users.positions,
                                         scenario.aps.vlc_positions, cp.vlc_d_max, cp.vlc_n_max);
  ClusteringMatrix ar = build_clustering(cfg.clustering, scenario.users.positions,
                                         scenario.aps.rf_positions, cp.rf_d_max, cp.rf_n_max);

  NetworkConfig vlc_net = physics.vlc_net;
  vlc_net.conversion_factor = physics.vlc.conversion_factor();
  setup.context = make_context(setup.channels, std::move(av), std::move(ar), vlc_net, physics.rf_net);
  return setup;
}

TrialResult solve_trial(const TrialConfig& cfg, const TrialSetup& setup) {
  const auto& ctx = setup.context;
  const std::size_t n = ctx.users();
  TrialResult result;
  result.seed = setup.seed;

  if (cfg.system != SystemKind::kHybrid) {
    result.b.assign(n, cfg.system == SystemKind::kVlcOnly ? 1 : 0);
    result.trace.converged = true;
  } else {
    Rng solver_rng = make_stream(setup.seed, kSolverStream);
    SolveResult solved;
    switch (cfg.solver) {
      case SolverKind::kGibbs:
        solved = associate_gibbs(ctx, cfg.gibbs, solver_rng);
        break;
      case SolverKind::kIterative:
        solved = associate_iterative(ctx);
        break;
      case SolverKind::kRandom:
        solved.b = associate_random(n, solver_rng);
        solved.trace.converged = true;
        break;
      case SolverKind::kExhaustive:
        solved = associate_exhaustive(ctx);
        break;
      case SolverKind::kFixed:
        throw std::invalid_argument("the hybrid system needs an association solver");
    }
    result.b = std::move(solved.b);
    result.trace = std::move(solved.trace);
  }
  result.report = evaluate(result.b, ctx);
  return result;
}

TrialResult run_trial(const TrialConfig& cfg, std::size_t trial_index) {
  return solve_trial(cfg, prepare_trial(cfg, trial_index));
}

std::vector<Series> ExperimentConfig::series() const {
  std::vector<Series> out;
  for (SystemKind system : systems) {
    for (ClusteringMode clustering : clusterings) {
      for (SolverKind solver : solvers) {
        Series s{system, system == SystemKind::kHybrid ? solver : SolverKind::kFixed, clustering};
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
      }
    }
  }
  return out;
}

std::vector<double> ExperimentConfig::resolved_sweep_values() const {
  if (!sweep_values.empty()) return sweep_values;
  switch (sweep_param) {
    case SweepParam::kUsers:
      return {static_cast<double>(base.n_users)};
    case SweepParam::kTotalAps:
      return {static_cast<double>(base.n_vap + base.n_rap)};
    case SweepParam::kFovDeg:
      return {base.physics.vlc.fov_semi_angle_deg};
  }
  return {};
}

std::vector<std::size_t> ExperimentConfig::resolved_user_counts() const {
  if (sweep_param == SweepParam::kUsers || user_counts.empty()) return {base.n_users};
  return user_counts;
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (systems.empty() || solvers.empty() || clusterings.empty()) {
    throw std::invalid_argument("systems, solvers and clustering lists must be non-empty");
  }
  if (std::find(solvers.begin(), solvers.end(), SolverKind::kFixed) != solvers.end()) {
    throw std::invalid_argument("'fixed' is not a selectable solver");
  }
  if (output == OutputKind::kCdf && sweep_param != SweepParam::kUsers) {
    throw std::invalid_argument("CDF output requires a sweep over n_users");
  }
  const auto values = resolved_sweep_values();
  if (values.empty()) throw std::invalid_argument("sweep values must be non-empty");
  for (double v : values) {
    for (std::size_t users : resolved_user_counts()) {
      for (const Series& s : series()) trial_config_for(*this, v, users, s).validate();
    }
  }
}

TrialConfig trial_config_for(const ExperimentConfig& cfg, double sweep_value, std::size_t n_users,
                             const Series& series) {
  TrialConfig t = cfg.base;
  if (cfg.sweep_param != SweepParam::kUsers) t.n_users = n_users;
  switch (cfg.sweep_param) {
    case SweepParam::kUsers: {
      if (!(sweep_value >= 1.0) || sweep_value != std::floor(sweep_value)) {
        throw std::invalid_argument("n_users sweep values must be positive integers");
      }
      t.n_users = static_cast<std::size_t>(sweep_value);
      break;
    }
    case SweepParam::kTotalAps: {
      const auto table = room_scaling_table();
      const auto row = std::find_if(table.begin(), table.end(), [&](const RoomScaling& r) {
        return static_cast<double>(r.total_aps) == sweep_value;
      });
      if (row == table.end()) {
        throw std::invalid_argument("total_aps value " + format_number(sweep_value) +
                                    " is not a row of the room scaling table");
      }
      t.n_vap = row->n_vap;
      t.n_rap = row->n_rap;
      t.physics.room.length = row->side;
      t.physics.room.width = row->side;
      break;
    }
    case SweepParam::kFovDeg:
      if (!(sweep_value > 0.0 && sweep_value <= 90.0)) {
        throw std::invalid_argument("fov_deg values must lie in (0, 90]");
      }
      t.physics.vlc.fov_semi_angle_deg = sweep_value;
      break;
  }
  t.system = series.system;
  t.solver = series.solver;
  t.clustering = series.clustering;
  return t;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  const auto series_list = cfg.series();
  const auto user_counts = cfg.resolved_user_counts();

  ExperimentReport report;
  for (double value : cfg.resolved_sweep_values()) {
    for (std::size_t users : user_counts) {
      std::string label(to_string(cfg.sweep_param));
      if (cfg.sweep_param != SweepParam::kUsers && user_counts.size() > 1) {
        label += "@n_users=" + std::to_string(users);
      }
      for (const Series& series : series_list) {
        const TrialConfig tcfg = trial_config_for(cfg, value, users, series);
        std::vector<TrialResult> results(cfg.trials);
        try {
          parallel_for(cfg.trials, threads, [&](std::size_t i) { results[i] = run_trial(tcfg, i); });
        } catch (const std::exception& e) {
          // Recover the failing trial index for the report.
          std::size_t failed = 0;
          while (failed < cfg.trials && !results[failed].b.empty()) ++failed;
          const auto seed = trial_seed(tcfg.base_seed, failed);
          throw TrialFailure(std::string(to_string(series.system)) + "/" +
                                 std::string(to_string(series.solver)) + "/" +
                                 std::string(to_string(series.clustering)) + " at " + label + "=" +
                                 format_number(value) + ", trial " + std::to_string(failed) +
                                 " (seed " + std::to_string(seed) + "): " + e.what(),
                             seed);
        }

        SweepRow row;
        row.sweep_param = label;
        row.sweep_value = value;
        row.series = series;
        row.n_users = tcfg.n_users;
        row.trials = cfg.trials;
        CdfPool pool{series, tcfg.n_users, {}};
        pool.rates.reserve(cfg.trials * tcfg.n_users);
        double sum = 0.0;
        double iterations = 0.0;
        double changes = 0.0;
        for (const auto& r : results) {
          sum += r.report.sum_rate;
          iterations += static_cast<double>(r.trace.iterations);
          changes += static_cast<double>(r.trace.changes);
          pool.rates.insert(pool.rates.end(), r.report.per_user_rate.begin(),
                            r.report.per_user_rate.end());
        }
        const auto n = static_cast<double>(cfg.trials);
        row.mean_sum_rate = sum / n;
        row.mean_iterations = iterations / n;
        row.mean_changes = changes / n;
        report.rows.push_back(std::move(row));
        report.pools.push_back(std::move(pool));
      }
    }
  }
  return report;
}

}  // namespace hybridcf
