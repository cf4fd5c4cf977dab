// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "../oracles.h"
#include "dualband/analytics.h"
#include "dualband/channel.h"
#include "dualband/config.h"
#include "dualband/los_learning.h"
#include "dualband/mmw_scheduler.h"
#include "dualband/results_io.h"
#include "dualband/sim_engine.h"
#include "dualband/uw_scheduler.h"

namespace {

using namespace dualband;

int failures = 0;

void report(int id, bool ok, const std::string& what) {
  std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, what.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <typename... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Random UEs in the cell with their microwave channel for one slot.
std::vector<UserEquipment> random_ues(int m, Rng& rng) {
  std::uniform_real_distribution<double> r2(25.0, 1e4), ang(0.0, 6.283185307);
  std::normal_distribution<double> sh(0.0, 10.0);
  std::vector<UserEquipment> ues(m);
  for (int i = 0; i < m; ++i) {
    double r = std::sqrt(r2(rng)), th = ang(rng);
    ues[i].id = i;
    ues[i].position = {r * std::cos(th), r * std::sin(th)};
    ues[i].shadow_uw_db = sh(rng);
  }
  return ues;
}

void stability() {
  Rng rng(101);
  std::uniform_int_distribution<int> m_d(1, 6), kappa_d(1, 2), k1_d(1, 10),
      cls(1, 5);
  std::uniform_real_distribution<double> bits(5e3, 1.5e5);
  long blocking = 0, infeasible = 0, served = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    RadioConfig cfg;
    cfg.k1 = k1_d(rng);
    auto ues = random_ues(m_d(rng), rng);
    UwChannelState ch = draw_uw_channel(static_cast<int>(ues.size()), cfg.k1, rng);
    int kappa = kappa_d(rng);
    ContextInfo ctx;
    ctx.slot = 1;
    UwRates rates;
    for (const auto& ue : ues) {
      for (int j = 0; j < kappa; ++j) {
        UaId a = static_cast<UaId>(ctx.entries.size());
        ctx.entries.push_back({a, ue.id, cls(rng), bits(rng), 1.0, true});
        auto& r = rates[a];
        for (int k = 0; k < cfg.k1; ++k) r.push_back(rate_uw(ue, k, ch, cfg));
      }
    }
    UwSchedule s = schedule_uw(ctx, rates, cfg);
    const MatchState& m = s.state;
    std::vector<std::vector<double>> r;
    std::vector<double> need;
    std::vector<int> ids, owner(cfg.k1, -1);
    for (std::size_t i = 0; i < m.candidates.size(); ++i) {
      UaId a = m.candidates[i];
      r.push_back(rates[a]);
      need.push_back(ctx.at(a).required_bits);
      ids.push_back(a);
      for (int k = 0; k < cfg.k1; ++k) {
        if (m.assignment[k] == a) owner[k] = static_cast<int>(i);
      }
      if (cfg.tau_s * m.held_rate(a, rates) < ctx.at(a).required_bits) {
        ++infeasible;
      }
    }
    for (int k = 0; k < cfg.k1; ++k) {
      if (m.assignment[k] != kNoUa && owner[k] < 0) ++infeasible;
    }
    served += static_cast<long>(m.candidates.size());
    blocking += static_cast<long>(
        oracle::blocking_pairs(r, need, ids, owner, cfg.tau_s).size());
  }
  report(1, blocking == 0 && infeasible == 0,
         fmt("%ld blocking pairs, %ld infeasible members over 1000 instances "
             "(%ld UAs matched)",
             blocking, infeasible, served));
}

void knapsack() {
  Rng rng(202);
  std::uniform_int_distribution<int> n_d(1, 15);
  std::uniform_real_distribution<double> bits(1e5, 3e6);
  RadioConfig cfg;
  int mismatches = 0;
  for (int rep = 0; rep < 500; ++rep) {
    int n = n_d(rng);
    std::vector<UserEquipment> ues = random_ues(n, rng);
    std::normal_distribution<double> sh(0.0, cfg.xi2_db);
    for (auto& ue : ues) ue.shadow_mmw_db = sh(rng);
    MmwChannelState ch = draw_mmw_channel(ues, cfg.k2, cfg.rician_k, rng, rng);
    ContextInfo ctx;
    ctx.slot = 1;
    MmwRates rates;
    MmwTiers tiers;
    std::vector<double> times;
    for (const auto& ue : ues) {
      ctx.entries.push_back({ue.id, ue.id, 1, bits(rng), 1.0, true});
      rates[ue.id] = planning_rate_mmw(ue, ch, cfg);
      tiers[0].push_back(ue.id);
      times.push_back(ctx.entries.back().required_bits / rates[ue.id]);
    }
    MmwSchedule s = schedule_mmw(tiers, ctx, rates, cfg);
    if (static_cast<int>(s.members.size()) !=
        oracle::max_fitting_count(times, cfg.tau_prime_s, cfg.tau_s)) {
      ++mismatches;
    }
  }
  report(2, mismatches == 0,
         fmt("%d of 500 single-tier instances differ from the exhaustive optimum",
             mismatches));
}

void lecam() {
  Rng rng(303);
  std::uniform_int_distribution<int> n_d(1, 12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  double worst_ratio = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> rho(n_d(rng));
    for (double& p : rho) p = u(rng);
    double mean = std::accumulate(rho.begin(), rho.end(), 0.0);
    double d = oracle::l1_poisson_direct(oracle::enumerate_bernoulli_sum(rho), mean);
    double bound = lecam_bound(rho);
    if (d > bound) ++violations;
    worst_ratio = std::max(worst_ratio, d / bound);
  }
  report(3, violations == 0,
         fmt("%d of 100 vectors exceed the bound (max distance/bound %.3f)",
             violations, worst_ratio));
}

void learning() {
  LearningConfig cfg;
  double th = rho_threshold(cfg.rewards);
  int hi = 0, lo = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng a = make_rng(seed, 0, Stream::kLearning);
    Rng b = make_rng(seed, 1, Stream::kLearning);
    LosLearner high(cfg), low(cfg);
    high.train(0.95, 2000, a);
    low.train(0.5, 2000, b);
    hi += high.prefers_mmw();
    lo += !low.prefers_mmw();
  }
  bool ok = std::abs(th - 17.0 / 19.0) < 1e-12 && hi >= 95 && lo >= 95;
  report(4, ok,
         fmt("rho_th=%.6f; rho=0.95 labelled mmW in %d/100 seeds, rho=0.5 "
             "labelled microwave in %d/100 seeds (need >= 95 each)",
             th, hi, lo));
}

double mean_outage(const Scenario& s) {
  auto drops = run_drops(s, 1);
  double sum = 0.0;
  for (const auto& d : drops) sum += d.outage;
  return sum / static_cast<double>(drops.size());
}

void scheduler_ranking() {
  bool ok = true;
  std::string detail;
  for (int m : {10, 20, 30}) {
    Scenario s;
    s.num_ues = m;
    s.uas_per_ue = 3;
    s.bits_per_ua = 1e6;
    s.rho_policy = RhoPolicy::kAllOne;
    s.drops = 200;
    s.seed = 4;
    double out[3];
    SchedulerKind kinds[] = {SchedulerKind::kContext, SchedulerKind::kPfMrr,
                             SchedulerKind::kRoundRobin};
    for (int i = 0; i < 3; ++i) {
      s.scheduler = kinds[i];
      out[i] = mean_outage(s);
    }
    ok = ok && out[0] <= out[1] && out[0] <= out[2] && out[0] <= 0.05;
    detail += fmt(" M=%d: %.4f/%.4f/%.4f;", m, out[0], out[1], out[2]);
  }
  report(5, ok, "outage context/pfmrr/rr over 200 drops:" + detail);
}

void alignment_cost() {
  std::vector<std::vector<double>> samples;
  std::string detail;
  for (double tp : {0.0, 0.4e-3, 0.8e-3}) {
    Scenario s;
    s.num_ues = 30;
    s.bits_per_ua = 1e6;
    s.rho_policy = RhoPolicy::kEdgeRandom;
    s.radio.tau_prime_s = tp;
    s.drops = 200;
    s.seed = 12;
    std::vector<double> v;
    for (const auto& d : run_drops(s, 1)) v.push_back(d.outage);
    detail += fmt(" tau'=%.1fms mean %.4f;", tp * 1e3,
                  std::accumulate(v.begin(), v.end(), 0.0) / v.size());
    samples.push_back(std::move(v));
  }
  std::vector<double> grid;
  for (const auto& v : samples) grid.insert(grid.end(), v.begin(), v.end());
  int crossings = 0;
  for (double x : grid) {
    for (int i = 0; i + 1 < 3; ++i) {
      if (ecdf(samples[i + 1], x) > ecdf(samples[i], x)) ++crossings;
    }
  }
  report(6, crossings == 0,
         fmt("%d CDF points out of order;", crossings) + detail);
}

void band_modes() {
  bool ok = true;
  std::string detail;
  for (int m : {10, 20, 30}) {
    Scenario s;
    s.num_ues = m;
    s.bits_per_ua = 1e5;
    s.rho_policy = RhoPolicy::kHalfRandom;
    s.drops = 200;
    s.seed = 10;
    double out[3];
    BandMode modes[] = {BandMode::kDual, BandMode::kMicrowaveOnly,
                        BandMode::kMmWaveOnly};
    for (int i = 0; i < 3; ++i) {
      s.band = modes[i];
      out[i] = mean_outage(s);
    }
    ok = ok && out[0] < std::min(out[1], out[2]);
    detail += fmt(" M=%d: %.4f/%.4f/%.4f;", m, out[0], out[1], out[2]);
  }
  report(7, ok, "outage dual/uw-only/mmw-only over 200 drops:" + detail);
}

void complexity() {
  bool bound_ok = true, linear_ok = true;
  long worst_slack = 0;
  std::string detail;
  const std::vector<int> ms = {10, 15, 20, 25, 30};
  for (int kappa : {1, 2, 3}) {
    std::vector<double> mean_iter;
    for (int m : ms) {
      Scenario s;
      s.num_ues = m;
      s.uas_per_ue = kappa;
      s.bits_per_ua = 1e5;
      s.rho_policy = RhoPolicy::kEdgeRandom;
      s.drops = 50;
      s.seed = 13;
      double sum = 0.0;
      for (const auto& d : run_drops(s, 1)) {
        long it = d.uw_iterations + d.mmw_iterations;
        long weighted = 0;
        for (int j = 0; j < s.num_classes; ++j) {
          weighted += static_cast<long>(j + 1) * d.class_sizes[j];
        }
        long bound = (s.radio.k1 + 1) * weighted;
        if (it > bound) bound_ok = false;
        worst_slack = std::max(worst_slack, it * 1000 / std::max(1L, bound));
        sum += static_cast<double>(it);
      }
      mean_iter.push_back(sum / s.drops);
    }
    // Least-squares line through (M, mean iterations).
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      mx += ms[i];
      my += mean_iter[i];
    }
    mx /= ms.size();
    my /= ms.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      sxy += (ms[i] - mx) * (mean_iter[i] - my);
      sxx += (ms[i] - mx) * (ms[i] - mx);
    }
    double b = sxy / sxx, a = my - b * mx;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      double fit = a + b * ms[i];
      double ratio = mean_iter[i] / fit;
      if (!(fit > 0.0) || ratio > 2.0 || ratio < 0.5) linear_ok = false;
    }
    detail += fmt(" kappa=%d: %.0f..%.0f;", kappa, mean_iter.front(),
                  mean_iter.back());
  }
  report(8, bound_ok && linear_ok,
         fmt("bound %s (max used %.1f%% of it), linear fit %s; mean iterations "
             "M=10..30:",
             bound_ok ? "held" : "exceeded", worst_slack / 10.0,
             linear_ok ? "within 2x" : "off by more than 2x") +
             detail);
}

void invariants() {
  Rng pick(909);
  std::uniform_int_distribution<int> m_d(1, 30), kappa_d(1, 3), kind_d(0, 2),
      band_d(0, 2), rho_d(0, 3);
  std::uniform_real_distribution<double> bits_d(1e4, 2e6), tp_d(0.0, 0.8e-3);
  long slots = 0, violations = 0;
  std::string first;
  auto flag = [&](const std::string& why) {
    if (violations++ == 0) first = why;
  };
  for (int drop = 0; slots < 10000; ++drop) {
    Scenario s;
    s.num_ues = m_d(pick);
    s.uas_per_ue = kappa_d(pick);
    s.bits_per_ua = bits_d(pick);
    s.scheduler = static_cast<SchedulerKind>(kind_d(pick));
    s.band = static_cast<BandMode>(band_d(pick));
    s.rho_policy = static_cast<RhoPolicy>(rho_d(pick));
    s.radio.tau_prime_s = tp_d(pick);
    s.learning.warmup_steps = 200;
    s.seed = 9;
    run_drop(s, drop, [&](const SlotRecord& rec) {
      ++slots;
      const SlotDecision& d = *rec.decision;
      const RadioConfig& r = s.radio;
      for (const auto& v : check_slot_decision(d, r.k1, r.tau_s, r.tau_prime_s)) {
        flag(v);
      }
      if (s.scheduler == SchedulerKind::kContext) {
        for (UaId a : d.g1) {
          double rate = 0.0;
          for (int k : d.rbs_of(a)) rate += rec.uw_rates->at(a)[k];
          if (r.tau_s * rate < rec.ctx->at(a).required_bits) {
            flag("microwave member short of its load");
          }
        }
      }
      const auto& before = *rec.apps_before;
      const auto& after = *rec.apps_after;
      for (std::size_t a = 0; a < after.size(); ++a) {
        const UserApp& ua = after[a];
        if (ua.remaining_bits < 0.0) flag("negative remaining load");
        double got = ua.received_log.back();
        if (got < 0.0) flag("negative delivery");
        double total = std::accumulate(ua.received_log.begin(),
                                       ua.received_log.end(), 0.0);
        if (std::abs(total + ua.remaining_bits - ua.total_bits) >
            1e-6 * std::max(1.0, ua.total_bits)) {
          flag("bits not conserved");
        }
        UaId id = static_cast<UaId>(a);
        bool in1 = d.g1.contains(id), in2 = d.g2.contains(id);
        if (!in1 && !in2 && got > 0.0) flag("bits delivered to unscheduled UA");
        if (in2) {
          double realised = rec.mmw_realised->at(id);
          if (realised == 0.0 && got > 0.0) flag("bits over a blocked mmW link");
          if (got > d.tau.at(id) * realised * (1 + 1e-12) + 1e-9) {
            flag("mmW delivery above airtime x rate");
          }
        }
        if (got > before[a].remaining_bits * (1 + 1e-12)) {
          flag("delivery above remaining load");
        }
      }
    });
  }
  report(9, violations == 0,
         fmt("%ld violations over %ld randomized slots", violations, slots) +
             (first.empty() ? "" : " (first: " + first + ")"));
}

void determinism() {
  ConfigFile cfg;
  cfg.experiment.base.num_ues = 12;
  cfg.experiment.base.drops = 20;
  cfg.experiment.base.seed = 77;
  cfg.experiment.base.rho_policy = RhoPolicy::kHalfRandom;
  cfg.experiment.sweep = {"bits_per_ua", {"100000", "1000000"}};
  cfg.experiment.schedulers = {SchedulerKind::kContext, SchedulerKind::kPfMrr,
                               SchedulerKind::kRoundRobin};
  auto tmp = std::filesystem::temp_directory_path();
  std::string text[2];
  for (int i = 0; i < 2; ++i) {
    cfg.output.dir = (tmp / ("dualband_accept_" + std::to_string(i))).string();
    cfg.experiment.parallel = i == 0 ? 1 : 3;
    auto path = emit_results(cfg, run_experiment(cfg.experiment));
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    text[i] = ss.str();
  }
  report(10, !text[0].empty() && text[0] == text[1],
         fmt("two runs (1 and 3 threads) wrote %zu and %zu bytes, %s",
             text[0].size(), text[1].size(),
             text[0] == text[1] ? "identical" : "different"));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {
      stability, knapsack, lecam,      learning,   scheduler_ranking,
      alignment_cost, band_modes, complexity, invariants, determinism};
  for (const auto& c : criteria) c();
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
