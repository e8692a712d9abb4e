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

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "hybridcf/config.hpp"

using namespace hybridcf;

TEST_CASE("empty configuration keeps the baseline defaults") {
  ExperimentConfig cfg;
  apply_config_text(cfg, "");
  CHECK(cfg.trials == 100);
  CHECK(cfg.base.n_users == 20);
  CHECK(cfg.base.n_vap == 16);
  CHECK(cfg.base.n_rap == 9);
  CHECK(cfg.base.physics.room.length == 10.0);
  CHECK(cfg.base.physics.room.height == 3.0);
  CHECK(cfg.base.physics.room.user_altitude == 0.85);
  CHECK(cfg.base.physics.blockage_rate == 0.1);
  CHECK(cfg.base.physics.vlc.fov_semi_angle_deg == 60.0);
  CHECK(cfg.base.physics.vlc_net.bandwidth_hz == 40e6);
  CHECK(cfg.base.physics.rf_net.bandwidth_hz == 15e6);
  CHECK(cfg.base.clustering_params.vlc_d_max == 4.0);
  CHECK(cfg.base.clustering_params.rf_n_max == 5);
  CHECK(cfg.base.gibbs.max_iterations == 500);
}

TEST_CASE("every documented key is accepted") {
  const char* text = R"(# comment
[experiment]
name = custom
trials = 7
seed = 123
threads = 2
output = sweep
systems = hybrid, vlc-only, rf-only
solvers = gibbs, iterative, random, exhaustive
clustering = none, A1, A2

[sweep]
param = n_users
values = 2, 4

[scenario]
n_users = 3
n_vap = 4
n_rap = 4
room_length = 8
room_width = 9
room_height = 3.5
user_altitude = 1.0
blockage_rate = 0.2

[vlc]
pd_area_m2 = 2e-4
half_intensity_angle_deg = 45
fov_semi_angle_deg = 70
refractive_index = 1.4
optical_filter_gain = 0.9
eo_factor = 0.5
oe_factor = 9
bandwidth_hz = 20e6
ap_power_w = 4
noise_psd = 2e-22
noise_factor = 1

[rf]
rician_k = 5
ref_loss_db = 60
ref_distance_m = 2
pathloss_exponent = 2
shadow_sigma_db = 0
bandwidth_hz = 10e6
ap_power_w = 3
noise_psd = 1e-18

[clustering]
vlc_d_max = 3.5
rf_d_max = 5
vlc_n_max = 2
rf_n_max = 4

[gibbs]
beta = 100
max_iterations = 50
weighting = exponential
)";
  ExperimentConfig cfg;
  apply_config_text(cfg, text);
  CHECK(cfg.name == "custom");
  CHECK(cfg.trials == 7);
  CHECK(cfg.base.base_seed == 123);
  CHECK(cfg.threads == 2);
  CHECK(cfg.systems.size() == 3);
  CHECK(cfg.solvers == std::vector<SolverKind>{SolverKind::kGibbs, SolverKind::kIterative, SolverKind::kRandom,
                                               SolverKind::kExhaustive});
  CHECK(cfg.clusterings.size() == 3);
  CHECK(cfg.sweep_values == std::vector<double>{2, 4});
  CHECK(cfg.base.n_users == 3);
  CHECK(cfg.base.n_vap == 4);
  CHECK(cfg.base.physics.room.width == 9);
  CHECK(cfg.base.physics.blockage_rate == 0.2);
  CHECK(cfg.base.physics.vlc.pd_area == 2e-4);
  CHECK(cfg.base.physics.vlc.half_intensity_angle_deg == 45.0);
  CHECK(cfg.base.physics.vlc.fov_semi_angle_deg == 70.0);
  CHECK(cfg.base.physics.vlc.conversion_factor() == doctest::Approx(4.5));
  CHECK(cfg.base.physics.vlc_net.noise_factor == 1.0);
  CHECK(cfg.base.physics.rf.rician_k == 5);
  CHECK(cfg.base.physics.rf.ref_distance == 2);
  CHECK(cfg.base.physics.rf_net.noise_psd == 1e-18);
  CHECK(cfg.base.clustering_params.vlc_n_max == 2);
  CHECK(cfg.base.gibbs.beta == 100);
  CHECK(cfg.base.gibbs.weighting == GibbsWeighting::kExponential);
}

TEST_CASE("user-count lists on non-user sweeps") {
  ExperimentConfig cfg;
  apply_config_text(cfg, "[sweep]\nparam = fov_deg\nvalues = 30, 60\n[scenario]\nn_users = 5, 10\n");
  CHECK(cfg.resolved_user_counts() == std::vector<std::size_t>{5, 10});
  CHECK(cfg.resolved_sweep_values() == std::vector<double>{30, 60});
}

TEST_CASE("configuration errors are reported as ConfigError") {
  const char* bad[] = {
      "[nonsense]\nx = 1\n",
      "[experiment]\nbogus = 1\n",
      "[experiment]\ntrials = many\n",
      "[experiment]\ntrials = 0\n",
      "[experiment]\nsystems = hybrid, satellite\n",
      "[experiment]\nsolvers = \n",
      "[sweep]\nparam = temperature\n",
      "[sweep]\nparam = total_aps\nvalues = 26\n",
      "[sweep]\nvalues = 2.5\n",
      "[scenario]\nn_vap = 15\n",
      "[scenario]\nblockage_rate = 2\n",
      "[vlc]\nfov_semi_angle_deg = 120\n",
      "[gibbs]\nweighting = metropolis\n",
      "trials = 3\n",
      "[experiment\ntrials = 3\n",
      "[experiment]\noutput = cdf\n[sweep]\nparam = fov_deg\n",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    ExperimentConfig cfg;
    CHECK_THROWS_AS(apply_config_text(cfg, text), ConfigError);
  }
}

TEST_CASE("config files") {
  const auto path = std::filesystem::temp_directory_path() / "hybridcf_test_config.ini";
  {
    std::ofstream out(path);
    out << "[experiment]\ntrials = 3\n";
  }
  ExperimentConfig cfg;
  apply_config_file(cfg, path);
  CHECK(cfg.trials == 3);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(apply_config_file(cfg, path), ConfigError);
}

TEST_CASE("figure presets") {
  CHECK(preset_names().size() == 10);
  for (auto name : preset_names()) {
    CAPTURE(name);
    const auto cfg = preset(name);
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.trials == 100);
  }
  const auto fig5 = preset("fig5");
  CHECK(fig5.sweep_param == SweepParam::kTotalAps);
  CHECK(fig5.sweep_values == std::vector<double>{25, 32, 45, 65, 80, 97, 125});
  const auto fig6 = preset("fig6");
  CHECK(fig6.sweep_param == SweepParam::kFovDeg);
  CHECK(fig6.resolved_user_counts().size() == 3);
  CHECK(preset("fig7").output == OutputKind::kCdf);
  CHECK(preset("fig10").clusterings == std::vector<ClusteringMode>{ClusteringMode::kDistance});
  CHECK(preset("fig11").clusterings == std::vector<ClusteringMode>{ClusteringMode::kTopN});
  CHECK(preset("fig4").series().size() == 5);
  CHECK_THROWS_AS(preset("fig99"), ConfigError);
}

TEST_CASE("a config file layers on top of a preset") {
  auto cfg = preset("fig9");
  apply_config_text(cfg, "[experiment]\ntrials = 4\n");
  CHECK(cfg.trials == 4);
  CHECK(cfg.sweep_values == std::vector<double>{10, 20, 30});
}
