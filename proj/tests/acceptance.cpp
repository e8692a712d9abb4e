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

// Acceptance run: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hybridcf/association.hpp"
#include "hybridcf/channel.hpp"
#include "hybridcf/clustering.hpp"
#include "hybridcf/config.hpp"
#include "hybridcf/harness.hpp"
#include "hybridcf/precoding.hpp"
#include "hybridcf/rates.hpp"
#include "hybridcf/scenario.hpp"

using namespace hybridcf;

namespace {

constexpr std::size_t kTrials = 100;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::printf("%s criterion %d: %s -- %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---- invariants checked on every trial the run produces (criteria 3, 10) ----

struct InvariantLedger {
  std::size_t trials = 0;
  std::size_t budget_checks = 0;
  std::size_t budget_violations = 0;
  double worst_low = 1.0;
  double worst_high = 0.0;
  std::size_t exclusivity_violations = 0;

  template <typename Scalar>
  void check_budget(const Matrix<Scalar>& w, const PowerAllocation& p) {
    if (w.size() == 0 || w.isZero(0.0)) return;
    double busiest = 0.0;
    for (Eigen::Index i = 0; i < w.rows(); ++i) {
      double load = 0.0;
      for (Eigen::Index j = 0; j < w.cols(); ++j) {
        load += std::norm(w(i, j)) * p.per_user[static_cast<std::size_t>(j)];
      }
      busiest = std::max(busiest, load);
    }
    ++budget_checks;
    worst_low = std::min(worst_low, busiest);
    worst_high = std::max(worst_high, busiest);
    if (!(busiest >= 1.0 - 1e-9 && busiest <= 1.0)) ++budget_violations;
  }

  void check(const TrialSetup& setup, const TrialResult& result) {
    ++trials;
    check_budget(setup.context.wv, setup.context.pv);
    check_budget(setup.context.wr, setup.context.pr);
    const auto& r = result.report;
    for (std::size_t j = 0; j < r.per_user_rate.size(); ++j) {
      const int nonzero = (r.per_user_vlc_rate[j] != 0.0) + (r.per_user_rf_rate[j] != 0.0);
      const bool gated = result.b[j] ? r.per_user_rf_rate[j] == 0.0 : r.per_user_vlc_rate[j] == 0.0;
      if (nonzero > 1 || !gated || r.per_user_rate[j] != r.per_user_vlc_rate[j] + r.per_user_rf_rate[j]) {
        ++exclusivity_violations;
      }
    }
  }
};

InvariantLedger ledger;

struct SeriesStats {
  double mean_sum_rate = 0.0;
  double mean_iterations = 0.0;
  std::vector<TrialResult> results;
};

SeriesStats run_series(const TrialConfig& cfg, std::size_t trials = kTrials) {
  SeriesStats s;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto setup = prepare_trial(cfg, t);
    auto result = solve_trial(cfg, setup);
    ledger.check(setup, result);
    s.mean_sum_rate += result.report.sum_rate;
    s.mean_iterations += static_cast<double>(result.trace.iterations);
    s.results.push_back(std::move(result));
  }
  s.mean_sum_rate /= static_cast<double>(trials);
  s.mean_iterations /= static_cast<double>(trials);
  return s;
}

TrialConfig make_cfg(std::size_t n_users, SystemKind system, SolverKind solver,
                     ClusteringMode clustering = ClusteringMode::kNone) {
  TrialConfig c;
  c.n_users = n_users;
  c.system = system;
  c.solver = system == SystemKind::kHybrid ? solver : SolverKind::kFixed;
  c.clustering = clustering;
  return c;
}

// ---- criterion 1 ----

Outcome channel_units() {
  Outcome o;
  std::ostringstream d;
  const VlcParams vlc;
  const double m60 = lambertian_order(60.0);
  const bool m_ok = m60 == 1.0;
  const double f0 = concentrator_gain(0.0, 60.0, 1.5);
  const bool f_ok = std::abs(f0 - 3.0) <= 1e-12;
  const double h = vlc_channel_gain({5, 5, 0.85}, {5, 5, 3}, false, vlc);
  const double oracle = 2.0 * 1e-4 * 3.0 / (2.0 * kPi * 2.15 * 2.15);
  const bool h_ok = std::abs(h / 2.066e-5 - 1.0) <= 0.005 && std::abs(h / oracle - 1.0) <= 1e-12;
  const RfParams rf;
  const double l1 = path_loss_db(1.0, 0.0, rf);
  const bool l_ok = l1 == 68.0;
  RfParams no_shadow = rf;
  no_shadow.shadow_sigma_db = 0.0;
  Rng rng(20240601);
  const Point3 user{3, 4, 0.85}, ap{5, 5, 3};
  const double expected = std::pow(10.0, -path_loss_db(distance(user, ap), 0.0, no_shadow) / 10.0);
  double acc = 0.0;
  const int draws = 100000;
  for (int t = 0; t < draws; ++t) acc += std::norm(rf_channel_gain(user, ap, no_shadow, rng));
  const double moment = acc / draws / expected;
  const bool e_ok = std::abs(moment - 1.0) <= 0.02;
  o.pass = m_ok && f_ok && h_ok && l_ok && e_ok;
  d << "m(60deg)=" << fmt(m60) << (m_ok ? "" : "!") << ", f(0)=" << fmt(f0) << (f_ok ? "" : "!")
    << ", h_below=" << fmt(h) << (h_ok ? "" : "!") << ", L(1m)=" << fmt(l1) << (l_ok ? "" : "!")
    << ", E|h|^2/PL=" << fmt(moment) << (e_ok ? "" : "!");
  o.detail = d.str();
  return o;
}

// ---- criterion 2 ----

template <typename Scalar>
void zf_instance(const Matrix<Scalar>& h, std::size_t& checked, std::size_t& degenerate, double& worst,
                 std::size_t& violations) {
  const Eigen::Index n = h.rows();
  std::vector<Eigen::Index> live;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (h.row(j).norm() > 0.0) live.push_back(j);
  }
  if (live.empty()) {
    ++degenerate;
    return;
  }
  Matrix<Scalar> sub(static_cast<Eigen::Index>(live.size()), h.cols());
  for (std::size_t k = 0; k < live.size(); ++k) sub.row(static_cast<Eigen::Index>(k)) = h.row(live[k]);
  Eigen::JacobiSVD<Matrix<Scalar>> svd(sub);
  const auto& s = svd.singularValues();
  if (s(s.size() - 1) == 0.0 || s(0) / s(s.size() - 1) > 1e6) {
    ++degenerate;
    return;
  }
  const Matrix<Scalar> w = partial_zf<Scalar>(h, cluster_full(static_cast<std::size_t>(n),
                                                              static_cast<std::size_t>(h.cols())));
  const Matrix<Scalar> g = h * w;
  ++checked;
  for (Eigen::Index j : live) {
    const double direct = std::abs(g(j, j));
    for (Eigen::Index l = 0; l < n; ++l) {
      if (l == j) continue;
      const double ratio = std::abs(g(j, l)) / direct;
      worst = std::max(worst, ratio);
      if (!(std::abs(g(j, l)) <= 1e-9 * direct)) ++violations;
    }
  }
}

Outcome zf_nulling() {
  std::size_t checked_v = 0, checked_r = 0, degenerate_v = 0, degenerate_r = 0, violations = 0;
  double worst = 0.0;
  std::size_t seed = 0;
  for (std::size_t inst = 0; inst < 100; ++inst) {
    Scenario s;
    s.aps = deploy_aps(s.room, 16, 9);
    Rng rng(make_stream(1000 + seed++, 0));
    std::uniform_int_distribution<std::size_t> vlc_users(1, 16), rf_users(1, 9);
    const std::size_t nv = vlc_users(rng);
    s.users.positions = place_users(s.room, nv, rng);
    s.users.vlc_blocked = sample_blockage(nv, 0.1, rng);
    const auto chv = build_channel_matrices(s, VlcParams{}, RfParams{}, rng);
    zf_instance<double>(chv.vlc, checked_v, degenerate_v, worst, violations);

    const std::size_t nr = rf_users(rng);
    s.users.positions = place_users(s.room, nr, rng);
    s.users.vlc_blocked = sample_blockage(nr, 0.1, rng);
    const auto chr = build_channel_matrices(s, VlcParams{}, RfParams{}, rng);
    zf_instance<std::complex<double>>(chr.rf, checked_r, degenerate_r, worst, violations);
  }
  Outcome o;
  o.pass = violations == 0 && checked_v > 0 && checked_r > 0;
  o.detail = "VLC " + std::to_string(checked_v) + " checked/" + std::to_string(degenerate_v) +
             " degenerate, RF " + std::to_string(checked_r) + " checked/" + std::to_string(degenerate_r) +
             " degenerate, worst cross/direct=" + fmt(worst) + ", violations=" + std::to_string(violations);
  return o;
}

// ---- criterion 4 ----

Outcome oracle_dominance() {
  const auto cfg = make_cfg(6, SystemKind::kHybrid, SolverKind::kIterative);
  std::size_t violations = 0, optimal = 0;
  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (std::size_t t = 0; t < 200; ++t) {
    const auto setup = prepare_trial(cfg, 5000 + t);
    const auto& ctx = setup.context;
    const auto it = associate_iterative(ctx);
    const auto ex = associate_exhaustive(ctx);
    if (ex.sum_rate < it.sum_rate) ++violations;
    auto b = it.b;
    for (std::size_t j = 0; j < b.size(); ++j) {
      b[j] ^= 1;
      if (sum_rate(b, ctx) > it.sum_rate) ++violations;
      b[j] ^= 1;
    }
    if (it.sum_rate == ex.sum_rate) ++optimal;
    if (ex.sum_rate > 0.0) {
      ratio_sum += it.sum_rate / ex.sum_rate;
      ++ratio_count;
    }
  }
  Outcome o;
  o.pass = violations == 0;
  o.detail = "200 instances, violations=" + std::to_string(violations) +
             ", mean iterative/exhaustive=" + fmt(ratio_sum / static_cast<double>(ratio_count)) +
             ", exact optimum on " + std::to_string(optimal) + "/200";
  return o;
}

// ---- criterion 5 ----

Outcome fig4_ordering() {
  const std::size_t n = 30;
  const double iterative = run_series(make_cfg(n, SystemKind::kHybrid, SolverKind::kIterative)).mean_sum_rate;
  const double random = run_series(make_cfg(n, SystemKind::kHybrid, SolverKind::kRandom)).mean_sum_rate;
  const double vlc = run_series(make_cfg(n, SystemKind::kVlcOnly, SolverKind::kFixed)).mean_sum_rate;
  const double rf = run_series(make_cfg(n, SystemKind::kRfOnly, SolverKind::kFixed)).mean_sum_rate;
  Outcome o;
  const bool a = iterative > random, b = iterative >= vlc, c = iterative >= rf;
  o.pass = a && b && c;
  o.detail = "N_u=30 means [Gbit/s]: hybrid-iterative=" + fmt(iterative / 1e9) + ", hybrid-random=" +
             fmt(random / 1e9) + (a ? "" : "!") + ", vlc-only(25 APs)=" + fmt(vlc / 1e9) + (b ? "" : "!") +
             ", rf-only(25 APs)=" + fmt(rf / 1e9) + (c ? "" : "!");
  return o;
}

// ---- criterion 6 ----

Outcome fig8_linear() {
  const std::vector<double> users{5, 10, 15, 20, 25, 30};
  std::vector<double> iterations;
  for (double n : users) {
    iterations.push_back(
        run_series(make_cfg(static_cast<std::size_t>(n), SystemKind::kHybrid, SolverKind::kGibbs)).mean_iterations);
  }
  bool increasing = true;
  for (std::size_t k = 1; k < iterations.size(); ++k) increasing = increasing && iterations[k] > iterations[k - 1];
  const double mx = std::accumulate(users.begin(), users.end(), 0.0) / static_cast<double>(users.size());
  const double my = std::accumulate(iterations.begin(), iterations.end(), 0.0) / static_cast<double>(users.size());
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < users.size(); ++k) {
    sxx += (users[k] - mx) * (users[k] - mx);
    sxy += (users[k] - mx) * (iterations[k] - my);
    syy += (iterations[k] - my) * (iterations[k] - my);
  }
  const double r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 0.0;
  Outcome o;
  o.pass = increasing && r2 >= 0.9;
  std::string series;
  for (double v : iterations) series += (series.empty() ? "" : ", ") + fmt(v);
  o.detail = "mean iterations at N_u=5..30: [" + series + "]" + (increasing ? "" : " not increasing!") +
             ", slope=" + fmt(sxy / sxx) + ", R^2=" + fmt(r2);
  return o;
}

// ---- criterion 7 ----

Outcome fig9_monotone() {
  std::size_t converged = 0, total = 0, non_monotone = 0;
  std::string changes;
  for (std::size_t n : {10u, 20u, 30u}) {
    const auto s = run_series(make_cfg(n, SystemKind::kHybrid, SolverKind::kIterative));
    double mean_changes = 0.0;
    for (const auto& r : s.results) {
      ++total;
      converged += r.trace.converged ? 1 : 0;
      for (std::size_t k = 1; k < r.trace.sum_rates.size(); ++k) {
        if (!(r.trace.sum_rates[k] > r.trace.sum_rates[k - 1])) {
          ++non_monotone;
          break;
        }
      }
      mean_changes += static_cast<double>(r.trace.changes);
    }
    changes += (changes.empty() ? "" : ", ") + std::to_string(n) + ":" + fmt(mean_changes / kTrials);
  }
  Outcome o;
  o.pass = converged == total && non_monotone == 0;
  o.detail = "converged " + std::to_string(converged) + "/" + std::to_string(total) +
             ", non-increasing traces=" + std::to_string(non_monotone) + ", mean changes {" + changes + "}";
  return o;
}

// ---- criterion 8 ----

Outcome clustering_comparison() {
  const std::size_t n = 20;
  std::ostringstream d;
  bool pass = true;
  double hybrid_iter[2], hybrid_gibbs[2];
  int k = 0;
  for (auto mode : {ClusteringMode::kDistance, ClusteringMode::kTopN}) {
    const double it = run_series(make_cfg(n, SystemKind::kHybrid, SolverKind::kIterative, mode)).mean_sum_rate;
    const double gb = run_series(make_cfg(n, SystemKind::kHybrid, SolverKind::kGibbs, mode)).mean_sum_rate;
    const double vlc = run_series(make_cfg(n, SystemKind::kVlcOnly, SolverKind::kFixed, mode)).mean_sum_rate;
    const double rf = run_series(make_cfg(n, SystemKind::kRfOnly, SolverKind::kFixed, mode)).mean_sum_rate;
    const bool ok = std::min(it, gb) >= std::max(vlc, rf);
    pass = pass && ok;
    d << to_string(mode) << " [Gbit/s]: iterative=" << fmt(it / 1e9) << " gibbs=" << fmt(gb / 1e9)
      << " vlc-only=" << fmt(vlc / 1e9) << " rf-only=" << fmt(rf / 1e9) << (ok ? "" : " (hybrid below standalone!)") << "; ";
    hybrid_iter[k] = it;
    hybrid_gibbs[k] = gb;
    ++k;
  }
  const bool a2_better = hybrid_iter[1] >= hybrid_iter[0] && hybrid_gibbs[1] >= hybrid_gibbs[0];
  d << "A2>=A1 " << (a2_better ? "yes" : "no!");
  Outcome o;
  o.pass = pass && a2_better;
  o.detail = d.str();
  return o;
}

// ---- criterion 9 ----

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "hybridcf_acceptance";
  std::filesystem::create_directories(dir);
  bool same = true;
  std::size_t bytes = 0;
  for (const char* name : {"fig4", "fig7", "fig12"}) {
    auto cfg = preset(name);
    cfg.trials = 10;
    cfg.base.base_seed = 7;
    std::string files[2];
    for (int run = 0; run < 2; ++run) {
      cfg.threads = run == 0 ? 1 : 3;
      const auto path = dir / (std::string(name) + "_" + std::to_string(run) + ".csv");
      write_report(run_experiment(cfg), cfg.output, path);
      files[run] = slurp(path);
      std::filesystem::remove(path);
    }
    same = same && !files[0].empty() && files[0] == files[1];
    bytes += files[0].size();
  }
  std::filesystem::remove_all(dir);
  Outcome o;
  o.pass = same;
  o.detail = "fig4/fig7/fig12 presets re-run (1 vs 3 threads), " + std::to_string(bytes) + " bytes " +
             (same ? "identical" : "DIFFER");
  return o;
}

}  // namespace

int main() {
  report(1, "channel unit checks", channel_units());
  report(2, "zero-forcing nulling, full clustering, N_u <= N_ap", zf_nulling());
  // Criteria 3 and 10 aggregate over every trial run by criteria 5-8.
  const auto c4 = oracle_dominance();
  const auto c5 = fig4_ordering();
  const auto c6 = fig8_linear();
  const auto c7 = fig9_monotone();
  const auto c8 = clustering_comparison();
  Outcome c3;
  c3.pass = ledger.budget_violations == 0 && ledger.budget_checks > 0;
  c3.detail = std::to_string(ledger.budget_checks) + " precoders over " + std::to_string(ledger.trials) +
              " trials, busiest-AP load in [" + fmt(1.0 - ledger.worst_low) + " below 1, " +
              (ledger.worst_high <= 1.0 ? "<= 1" : "ABOVE 1") + "], violations=" +
              std::to_string(ledger.budget_violations);
  report(3, "per-AP power budget tight at the busiest AP", c3);
  report(4, "exhaustive >= iterative >= single-flip neighbourhood", c4);
  report(5, "N_u=30 ordering: hybrid-iterative vs random and standalone", c5);
  report(6, "Gibbs iterations increase linearly with N_u", c6);
  report(7, "iterative traces strictly increase and terminate", c7);
  report(8, "clustering: A2 >= A1, hybrid >= standalone", c8);
  report(9, "byte-identical CSV on re-run", determinism());
  Outcome c10;
  c10.pass = ledger.exclusivity_violations == 0 && ledger.trials > 0;
  c10.detail = std::to_string(ledger.trials) + " trials, users with both network terms or ungated rate=" +
               std::to_string(ledger.exclusivity_violations);
  report(10, "one network per user", c10);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
