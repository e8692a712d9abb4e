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

#include "hybridcf/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace hybridcf {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "': expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "': expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

template <typename Enum>
Enum parse_enum(std::string_view key, std::string_view text,
                std::initializer_list<std::pair<std::string_view, Enum>> choices) {
  text = trim(text);
  for (const auto& [name, value] : choices) {
    if (text == name) return value;
  }
  std::string allowed;
  for (const auto& [name, value] : choices) {
    if (!allowed.empty()) allowed += ", ";
    allowed += name;
  }
  throw ConfigError("'" + std::string(key) + "': unknown value '" + std::string(text) +
                    "' (expected one of " + allowed + ")");
}

SystemKind parse_system(std::string_view key, std::string_view v) {
  return parse_enum<SystemKind>(key, v,
                                {{"hybrid", SystemKind::kHybrid},
                                 {"vlc-only", SystemKind::kVlcOnly},
                                 {"rf-only", SystemKind::kRfOnly}});
}

SolverKind parse_solver(std::string_view key, std::string_view v) {
  return parse_enum<SolverKind>(key, v,
                                {{"iterative", SolverKind::kIterative},
                                 {"gibbs", SolverKind::kGibbs},
                                 {"random", SolverKind::kRandom},
                                 {"exhaustive", SolverKind::kExhaustive}});
}

ClusteringMode parse_clustering(std::string_view key, std::string_view v) {
  return parse_enum<ClusteringMode>(
      key, v,
      {{"none", ClusteringMode::kNone}, {"A1", ClusteringMode::kDistance}, {"A2", ClusteringMode::kTopN}});
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view key, std::string_view text, Parse parse) {
  std::vector<T> out;
  for (auto item : split_list(text)) out.push_back(parse(key, item));
  if (out.empty()) throw ConfigError("'" + std::string(key) + "': empty list");
  return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

template <typename Field>
Setter number(Field field) {
  return [field](ExperimentConfig& c, std::string_view key, std::string_view v) {
    field(c) = parse_double(key, v);
  };
}

template <typename Field>
Setter count(Field field) {
  return [field](ExperimentConfig& c, std::string_view key, std::string_view v) {
    field(c) = static_cast<std::size_t>(parse_unsigned(key, v));
  };
}

// section -> key -> setter
const std::map<std::string, std::map<std::string, Setter>>& setters() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"experiment",
       {
           {"name", [](ExperimentConfig& c, std::string_view, std::string_view v) { c.name = trim(v); }},
           {"trials", count([](ExperimentConfig& c) -> std::size_t& { return c.trials; })},
           {"seed",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.base.base_seed = parse_unsigned(k, v);
            }},
           {"threads",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.threads = static_cast<unsigned>(parse_unsigned(k, v));
            }},
           {"output",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.output = parse_enum<OutputKind>(k, v, {{"sweep", OutputKind::kSweep}, {"cdf", OutputKind::kCdf}});
            }},
           {"systems",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.systems = parse_list<SystemKind>(k, v, parse_system);
            }},
           {"solvers",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.solvers = parse_list<SolverKind>(k, v, parse_solver);
            }},
           {"clustering",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.clusterings = parse_list<ClusteringMode>(k, v, parse_clustering);
            }},
       }},
      {"sweep",
       {
           {"param",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.sweep_param = parse_enum<SweepParam>(k, v,
                                                     {{"n_users", SweepParam::kUsers},
                                                      {"total_aps", SweepParam::kTotalAps},
                                                      {"fov_deg", SweepParam::kFovDeg}});
            }},
           {"values",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.sweep_values = parse_list<double>(k, v, parse_double);
            }},
       }},
      {"scenario",
       {
           {"n_users",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              auto counts = parse_list<std::size_t>(k, v, [](std::string_view key, std::string_view item) {
                return static_cast<std::size_t>(parse_unsigned(key, item));
              });
              c.base.n_users = counts.front();
              c.user_counts = counts.size() > 1 ? counts : std::vector<std::size_t>{};
            }},
           {"n_vap", count([](ExperimentConfig& c) -> std::size_t& { return c.base.n_vap; })},
           {"n_rap", count([](ExperimentConfig& c) -> std::size_t& { return c.base.n_rap; })},
           {"room_length", number([](ExperimentConfig& c) -> double& { return c.base.physics.room.length; })},
           {"room_width", number([](ExperimentConfig& c) -> double& { return c.base.physics.room.width; })},
           {"room_height", number([](ExperimentConfig& c) -> double& { return c.base.physics.room.height; })},
           {"user_altitude",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.room.user_altitude; })},
           {"blockage_rate", number([](ExperimentConfig& c) -> double& { return c.base.physics.blockage_rate; })},
       }},
      {"vlc",
       {
           {"pd_area_m2", number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc.pd_area; })},
           {"half_intensity_angle_deg",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc.half_intensity_angle_deg; })},
           {"fov_semi_angle_deg",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc.fov_semi_angle_deg; })},
           {"refractive_index",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc.refractive_index; })},
           {"optical_filter_gain",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc.optical_filter_gain; })},
           {"eo_factor", number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc.eo_factor; })},
           {"oe_factor", number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc.oe_factor; })},
           {"bandwidth_hz",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc_net.bandwidth_hz; })},
           {"ap_power_w", number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc_net.ap_power_w; })},
           {"noise_psd", number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc_net.noise_psd; })},
           {"noise_factor",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.vlc_net.noise_factor; })},
       }},
      {"rf",
       {
           {"rician_k", number([](ExperimentConfig& c) -> double& { return c.base.physics.rf.rician_k; })},
           {"ref_loss_db", number([](ExperimentConfig& c) -> double& { return c.base.physics.rf.ref_loss_db; })},
           {"ref_distance_m", number([](ExperimentConfig& c) -> double& { return c.base.physics.rf.ref_distance; })},
           {"pathloss_exponent",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.rf.pathloss_exponent; })},
           {"shadow_sigma_db",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.rf.shadow_sigma_db; })},
           {"bandwidth_hz",
            number([](ExperimentConfig& c) -> double& { return c.base.physics.rf_net.bandwidth_hz; })},
           {"ap_power_w", number([](ExperimentConfig& c) -> double& { return c.base.physics.rf_net.ap_power_w; })},
           {"noise_psd", number([](ExperimentConfig& c) -> double& { return c.base.physics.rf_net.noise_psd; })},
       }},
      {"clustering",
       {
           {"vlc_d_max", number([](ExperimentConfig& c) -> double& { return c.base.clustering_params.vlc_d_max; })},
           {"rf_d_max", number([](ExperimentConfig& c) -> double& { return c.base.clustering_params.rf_d_max; })},
           {"vlc_n_max",
            count([](ExperimentConfig& c) -> std::size_t& { return c.base.clustering_params.vlc_n_max; })},
           {"rf_n_max", count([](ExperimentConfig& c) -> std::size_t& { return c.base.clustering_params.rf_n_max; })},
       }},
      {"gibbs",
       {
           {"beta", number([](ExperimentConfig& c) -> double& { return c.base.gibbs.beta; })},
           {"max_iterations",
            count([](ExperimentConfig& c) -> std::size_t& { return c.base.gibbs.max_iterations; })},
           {"weighting",
            [](ExperimentConfig& c, std::string_view k, std::string_view v) {
              c.base.gibbs.weighting = parse_enum<GibbsWeighting>(
                  k, v,
                  {{"transform", GibbsWeighting::kScoreTransform}, {"exponential", GibbsWeighting::kExponential}});
            }},
       }},
  };
  return table;
}

std::vector<double> user_sweep() { return {5, 10, 15, 20, 25, 30}; }

}  // namespace

std::vector<std::string_view> preset_names() {
  return {"fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12", "fig13"};
}

ExperimentConfig preset(std::string_view name) {
  using enum SystemKind;
  using enum SolverKind;
  ExperimentConfig c;
  c.name = std::string(name);
  const std::vector<SystemKind> all_systems{kHybrid, kVlcOnly, kRfOnly};
  const std::vector<SolverKind> all_solvers{kIterative, kGibbs, kRandom};

  if (name == "fig4") {
    // Sum-rate versus users, no clustering.
    c.sweep_values = user_sweep();
    c.systems = all_systems;
    c.solvers = all_solvers;
  } else if (name == "fig5") {
    // Sum-rate versus total APs with the room scaled to keep AP density.
    c.sweep_param = SweepParam::kTotalAps;
    for (const auto& row : room_scaling_table()) c.sweep_values.push_back(static_cast<double>(row.total_aps));
    c.base.n_users = 30;
    c.solvers = {kIterative, kGibbs};
  } else if (name == "fig6") {
    // Receiver FoV sweep; the LED half-intensity angle stays at 60 degrees.
    c.sweep_param = SweepParam::kFovDeg;
    c.sweep_values = {20, 30, 40, 50, 60, 70, 80, 90};
    c.base.n_users = 5;
    c.user_counts = {5, 10, 20};
    c.systems = {kHybrid, kVlcOnly};
    c.solvers = {kIterative, kGibbs};
  } else if (name == "fig7" || name == "fig10" || name == "fig11") {
    // Per-user rate CDFs without clustering, with A1, with A2.
    c.output = OutputKind::kCdf;
    c.sweep_values = {10, 20};
    c.systems = all_systems;
    c.solvers = all_solvers;
    if (name == "fig10") c.clusterings = {ClusteringMode::kDistance};
    if (name == "fig11") c.clusterings = {ClusteringMode::kTopN};
  } else if (name == "fig8") {
    // Gibbs iterations to convergence versus users.
    c.sweep_values = user_sweep();
    c.solvers = {kGibbs};
  } else if (name == "fig9") {
    // Accepted changes of the iterative algorithm.
    c.sweep_values = {10, 20, 30};
    c.solvers = {kIterative};
  } else if (name == "fig12" || name == "fig13") {
    c.sweep_values = user_sweep();
    c.solvers = {kIterative, kGibbs};
    c.clusterings = {name == "fig12" ? ClusteringMode::kDistance : ClusteringMode::kTopN};
  } else {
    throw ConfigError("unknown preset '" + std::string(name) + "'");
  }
  return c;
}

void apply_config_text(ExperimentConfig& cfg, const std::string& text) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::ini_parser::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config syntax: ") + e.what());
  }

  const auto& table = setters();
  for (const auto& [section, entries] : tree) {
    if (entries.empty() && !entries.data().empty()) {
      throw ConfigError("key '" + section + "' must appear inside a [section]");
    }
    const auto known = table.find(section);
    if (known == table.end()) throw ConfigError("unknown section [" + section + "]");
    for (const auto& [key, value] : entries) {
      const auto setter = known->second.find(key);
      if (setter == known->second.end()) {
        throw ConfigError("unknown key '" + key + "' in [" + section + "]");
      }
      setter->second(cfg, key, value.data());
    }
  }
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(cfg, text.str());
}

}  // namespace hybridcf
