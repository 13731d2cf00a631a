// Copyright 2026 The afc-keyforge Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "afc/channel.hpp"
#include "afc/experiment.hpp"
#include "afc/factorint.hpp"
#include "afc/harness.hpp"
#include "afc_keyforge.h"
#include "oracles.hpp"

namespace {

using afc::harness::Cell;
using afc::harness::SimulationConfig;
using afc::harness::Simulator;
using afc::harness::SweepPointResult;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

unsigned max_workers() { return std::max(1U, std::thread::hardware_concurrency()); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double slack(const SweepPointResult& a, const SweepPointResult& b) {
  return 2.0 * std::max(a.ci95_halfwidth, b.ci95_halfwidth);
}

// 1. Ideal channel gives certain recovery.
Verdict ideal_channel() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t nodes : {2U, 3U}) {
    SimulationConfig c;
    c.trials = 1000;
    c.node_count = nodes;
    c.sigma_h = {0.0};
    c.sigma_n = 0.0;
    for (const auto& r : afc::harness::run_sweep(c, {max_workers(), {}})) {
      v.require(r.success_rate == 1.0, "N=" + std::to_string(nodes) + " K=" + fmt("%g", r.k_factor) +
                                           " rate=" + fmt("%.6f", r.success_rate));
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 60.0, "runtime " + fmt("%.1f s", secs));
  if (v.pass) v.detail = "rate 1.0 at N in {2,3} x K in {0,3,20}, " + fmt("%.2f s", secs);
  return v;
}

// 2. factor() equals the divisor-scan oracle on 10^4 random n <= 10^6.
Verdict factorization_oracle() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(0xfac7);
  std::uniform_int_distribution<std::uint64_t> pick(1, 1'000'000);
  int mismatches = 0;
  for (int i = 0; i < 10'000; ++i) {
    const std::uint64_t n = pick(rng);
    const auto got = afc::factorint::factor(n);
    afc::factorint::Factorization want;
    for (auto [p, e] : afc::testing::divisor_scan(n)) want.factors.push_back({p, e});
    if (!(got == want)) ++mismatches;
  }
  const double secs = seconds_since(t0);
  v.require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  v.require(secs < 30.0, "runtime " + fmt("%.1f s", secs));
  if (v.pass) v.detail = "10000/10000 match, " + fmt("%.2f s", secs);
  return v;
}

// 3. Rician gain statistics at 10^5 samples.
Verdict rician_statistics() {
  Verdict v;
  constexpr std::size_t kSamples = 100'000;
  std::string summary;
  for (double k : {0.0, 3.0, 20.0}) {
    const afc::channel::RicianParams params(k);
    afc::RandomStream rng = afc::derive_stream(2026, static_cast<std::uint64_t>(k), 0);
    std::vector<double> power(kSamples), envelope(kSamples);
    double mean = 0.0;
    for (std::size_t i = 0; i < kSamples; ++i) {
      const auto g = afc::channel::sample_small_scale(params, rng);
      power[i] = std::norm(g);
      envelope[i] = std::abs(g);
      mean += power[i];
    }
    mean /= kSamples;
    v.require(std::abs(mean - 1.0) <= 0.01, "K=" + fmt("%g", k) + " mean power " + fmt("%.4f", mean));
    std::string k_note;
    if (k > 0) {
      const double k_hat = afc::testing::moment_k_estimate(power);
      v.require(std::abs(k_hat - k) <= 0.05 * k, "K=" + fmt("%g", k) + " estimate " + fmt("%.3f", k_hat));
      k_note = " K^=" + fmt("%.3f", k_hat);
    }
    const afc::testing::RicianCdfTable cdf(params.los_amplitude(), params.scale(), 5.0, 50'000);
    const double ks = afc::testing::ks_statistic(envelope, cdf);
    const double crit = afc::testing::ks_critical_1pct(kSamples);
    v.require(ks < crit, "K=" + fmt("%g", k) + " KS " + fmt("%.5f", ks) + " >= " + fmt("%.5f", crit));
    summary += (summary.empty() ? "" : ", ") + ("K=" + fmt("%g", k) + ": E|g|^2=" + fmt("%.4f", mean) + k_note +
                                               " KS=" + fmt("%.5f", ks));
  }
  if (v.pass) v.detail = summary + " (KS crit " + fmt("%.5f", afc::testing::ks_critical_1pct(kSamples)) + ")";
  return v;
}

// 4. Tolerance monotonicity, exact and per trial.
Verdict tolerance_monotonicity() {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  const SimulationConfig defaults;
  std::size_t checked_trials = 0;
  for (double sigma_h : defaults.sigma_h) {
    SimulationConfig c;
    c.trials = 2000;
    c.sigma_h = {sigma_h};
    c.tolerance = {0, 500, 1500, 3000};
    const Simulator sim(c);
    const auto cells = sim.cells();
    for (std::size_t k = 0; k < c.k_factors.size(); ++k) {
      std::vector<bool> previous(c.trials, false);
      std::size_t previous_count = 0;
      for (std::size_t t = 0; t < c.tolerance.size(); ++t) {
        const auto now = sim.trial_successes(cells[t * c.k_factors.size() + k], max_workers());
        std::size_t count = 0;
        for (std::size_t i = 0; i < now.size(); ++i) {
          count += now[i];
          if (previous[i] && !now[i]) {
            v.require(false, "trial " + std::to_string(i) + " lost at tolerance " + std::to_string(c.tolerance[t]));
          }
        }
        v.require(count >= previous_count, "aggregate rate decreased");
        checked_trials += now.size();
        previous = now;
        previous_count = count;
      }
    }
  }
  const double secs = seconds_since(t0);
  v.require(secs < 300.0, "runtime " + fmt("%.1f s", secs));
  if (v.pass) {
    v.detail = "success sets nested over gamma_t in {0,500,1500,3000} across the sigma_h sweep (" +
               std::to_string(checked_trials) + " trial evaluations), " + fmt("%.1f s", secs);
  }
  return v;
}

// 5. K ordering and sigma_h degradation.
Verdict k_ordering() {
  Verdict v;
  SimulationConfig c;
  c.trials = 2000;
  const auto rows = afc::harness::run_sweep(c, {max_workers(), {}});
  const std::size_t nk = c.k_factors.size();
  for (std::size_t s = 0; s < c.sigma_h.size(); ++s) {
    const auto& k0 = rows[s * nk + 0];
    const auto& k3 = rows[s * nk + 1];
    const auto& k20 = rows[s * nk + 2];
    v.require(k20.success_rate >= k3.success_rate - slack(k20, k3), "sigma_h=" + fmt("%g", k0.sweep_value) + " K20<K3");
    v.require(k3.success_rate >= k0.success_rate - slack(k3, k0), "sigma_h=" + fmt("%g", k0.sweep_value) + " K3<K0");
  }
  std::string span;
  for (std::size_t k = 0; k < nk; ++k) {
    const double lo = rows[k].success_rate;
    const double hi = rows[(c.sigma_h.size() - 1) * nk + k].success_rate;
    v.require(hi < lo, "K=" + fmt("%g", c.k_factors[k]) + " rate at sigma_h=0.1 not below sigma_h=0.01");
    span += (span.empty() ? "" : ", ") + ("K=" + fmt("%g", c.k_factors[k]) + ": " + fmt("%.4f", lo) + " -> " +
                                          fmt("%.4f", hi));
  }
  if (v.pass) v.detail = span;
  return v;
}

// 6. Distance decay and the vanishing-signal plateau.
Verdict distance_plateau() {
  Verdict v;
  SimulationConfig c = afc::experiment::preset_config(afc::experiment::Preset::sweep_distance);
  c.trials = 2000;
  const std::size_t nk = c.k_factors.size();
  const std::size_t nd = c.distance_m.size();

  const auto rows = afc::harness::run_sweep(c, {max_workers(), {}});
  for (std::size_t k = 0; k < nk; ++k) {
    for (std::size_t d = 1; d < nd; ++d) {
      const auto& near = rows[(d - 1) * nk + k];
      const auto& far = rows[d * nk + k];
      v.require(far.success_rate <= near.success_rate + slack(far, near),
                "K=" + fmt("%g", far.k_factor) + " rate rises at d=" + fmt("%g", far.sweep_value));
    }
  }

  // The oracle is defined for the reference node, so compare node 0's rate.
  SimulationConfig ref = c;
  ref.success_scope = afc::harness::SuccessScope::node_0;
  const Simulator sim(ref);
  const auto ref_rows = sim.run_sweep({max_workers(), {}});
  const double oracle = afc::harness::plateau_oracle(sim.pool(), c.node_count, c.tolerance.front());
  std::string at150;
  for (std::size_t k = 0; k < nk; ++k) {
    const auto& node0 = ref_rows[(nd - 1) * nk + k];
    const auto& all = rows[(nd - 1) * nk + k];
    v.require(std::abs(node0.success_rate - oracle) <= 0.02,
              "K=" + fmt("%g", node0.k_factor) + " node-0 rate at d=150 " + fmt("%.4f", node0.success_rate) +
                  " vs plateau oracle " + fmt("%.4f", oracle));
    at150 += (at150.empty() ? "" : ", ") + ("K=" + fmt("%g", node0.k_factor) + " node0=" +
                                            fmt("%.4f", node0.success_rate) + " all=" + fmt("%.4f", all.success_rate));
  }
  if (v.pass) v.detail = "non-increasing in d; d=150 rates " + at150 + " vs oracle " + fmt("%.4f", oracle);
  else v.detail += " [d=150: " + at150 + "]";
  return v;
}

// 7. Three nodes never beat two.
Verdict node_count_dominance() {
  Verdict v;
  std::size_t coords = 0;
  for (auto preset : {afc::experiment::Preset::sweep_error, afc::experiment::Preset::sweep_distance}) {
    SimulationConfig two = afc::experiment::preset_config(preset);
    two.trials = 2000;
    SimulationConfig three = two;
    three.node_count = 3;
    const auto r2 = Simulator(two, afc::experiment::preset_sweep(preset)).run_sweep({max_workers(), {}});
    const auto r3 = Simulator(three, afc::experiment::preset_sweep(preset)).run_sweep({max_workers(), {}});
    for (std::size_t i = 0; i < r2.size(); ++i) {
      ++coords;
      v.require(r3[i].success_rate <= r2[i].success_rate + slack(r3[i], r2[i]),
                std::string(afc::experiment::to_string(preset)) + " at " + fmt("%g", r2[i].sweep_value) +
                    " K=" + fmt("%g", r2[i].k_factor) + ": N=3 " + fmt("%.4f", r3[i].success_rate) + " > N=2 " +
                    fmt("%.4f", r2[i].success_rate));
    }
  }
  if (v.pass) v.detail = "N=3 <= N=2 at all " + std::to_string(coords) + " coordinates (sigma_h and distance sweeps)";
  return v;
}

// 8. Limited factorization never succeeds where unlimited fails.
Verdict limited_dominance() {
  Verdict v;
  std::size_t limited_hits = 0, unlimited_hits = 0;
  SimulationConfig unlimited;
  unlimited.trials = 2000;
  SimulationConfig limited = unlimited;
  limited.policy.mode = afc::factorint::FactorMode::limited;
  const Simulator su(unlimited), sl(limited);
  const auto cells = su.cells();
  for (const Cell& cell : cells) {
    const auto fu = su.trial_successes(cell, max_workers());
    const auto fl = sl.trial_successes(cell, max_workers());
    std::size_t cu = 0, cl = 0;
    for (std::size_t i = 0; i < fu.size(); ++i) {
      cu += fu[i];
      cl += fl[i];
      if (fl[i] && !fu[i]) v.require(false, "trial " + std::to_string(i) + " limited-only success");
    }
    v.require(cl <= cu, "aggregate limited rate above unlimited");
    limited_hits += cl;
    unlimited_hits += cu;
  }
  if (v.pass) {
    v.detail = "limited success set within unlimited over " + std::to_string(cells.size()) + " cells (" +
               std::to_string(limited_hits) + " <= " + std::to_string(unlimited_hits) + " successes)";
  }
  return v;
}

std::string run_csv(const char* preset, unsigned workers) {
  afc_config* c = nullptr;
  afc_result_set* r = nullptr;
  std::string text;
  if (afc_config_create(preset, &c) == AFC_OK && afc_config_set(c, "trials", "500") == AFC_OK &&
      afc_config_set(c, "seed", "424242") == AFC_OK && afc_experiment_run(c, workers, nullptr, nullptr, &r) == AFC_OK) {
    size_t needed = 0;
    afc_result_set_csv(r, nullptr, 0, &needed);
    text.assign(needed, '\0');
    afc_result_set_csv(r, text.data(), text.size(), &needed);
  }
  afc_result_set_destroy(r);
  afc_config_destroy(c);
  return text;
}

// 9. Byte-identical CSV at one and at maximum workers.
Verdict determinism_under_parallelism() {
  Verdict v;
  // Oversubscribe on small machines so the parallel path is exercised.
  const unsigned parallel_workers = std::max(8U, max_workers());
  const char* presets[] = {"sweep-error",     "sweep-distance", "sweep-tolerance",
                           "compare-limited", "compare-nodes",  "single-run"};
  for (const char* p : presets) {
    const std::string serial = run_csv(p, 1);
    const std::string parallel = run_csv(p, parallel_workers);
    v.require(!serial.empty(), std::string(p) + " failed to run");
    v.require(serial == parallel, std::string(p) + " CSV differs");
  }
  if (v.pass) v.detail = "all 6 presets identical at 1 and " + std::to_string(parallel_workers) + " workers";
  return v;
}

// 10. Free-space amplitude at 15 m and 2.4 GHz.
Verdict pathloss_formula() {
  Verdict v;
  afc::channel::Geometry geom;
  geom.wavelength = afc::channel::kSpeedOfLight / 2.4e9;
  const double a = afc::channel::pathloss_amplitude(15.0, geom, afc::channel::PathlossMode::physical);
  const double rel = std::abs(a - 6.631e-4) / 6.631e-4;
  v.require(rel <= 1e-3, "amplitude " + fmt("%.5e", a));
  if (v.pass) v.detail = "amplitude " + fmt("%.5e", a) + ", relative deviation " + fmt("%.2e", rel);
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {"ideal-channel certainty", ideal_channel},
      {"factorization oracle equivalence", factorization_oracle},
      {"Rician statistics", rician_statistics},
      {"tolerance monotonicity", tolerance_monotonicity},
      {"K ordering", k_ordering},
      {"distance decay and plateau", distance_plateau},
      {"node-count dominance", node_count_dominance},
      {"limited-factorization dominance", limited_dominance},
      {"determinism under parallelism", determinism_under_parallelism},
      {"path-loss formula", pathloss_formula},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += !v.pass;
    std::printf("[%s] %2zu. %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
