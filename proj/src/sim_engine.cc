#include "dualband/sim_engine.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <limits>
#include <mutex>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "dualband/baselines.h"

namespace dualband {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::invalid_argument(what);
}

std::vector<UserEquipment> place_ues(const Scenario& s, Rng& placement,
                                     Rng& shadowing) {
  std::uniform_real_distribution<double> r2(
      s.min_distance_m * s.min_distance_m, s.max_distance_m * s.max_distance_m);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::normal_distribution<double> sh1(0.0, s.radio.xi1_db);
  std::normal_distribution<double> sh2(0.0, s.radio.xi2_db);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  std::vector<UserEquipment> ues(s.num_ues);
  for (int i = 0; i < s.num_ues; ++i) {
    UserEquipment& ue = ues[i];
    ue.id = i;
    double r = std::sqrt(r2(placement));
    double th = angle(placement);
    ue.position = {r * std::cos(th), r * std::sin(th)};
    ue.shadow_uw_db = s.radio.xi1_db > 0.0 ? sh1(shadowing) : 0.0;
    ue.shadow_mmw_db = s.radio.xi2_db > 0.0 ? sh2(shadowing) : 0.0;
  }

  switch (s.rho_policy) {
    case RhoPolicy::kAllOne:
      break;
    case RhoPolicy::kUniform:
      for (auto& ue : ues) ue.rho = u01(placement);
      break;
    case RhoPolicy::kEdgeRandom:
      for (auto& ue : ues) {
        if (distance_to_bs(ue.position) > s.edge_distance_m) {
          ue.rho = u01(placement);
        }
      }
      break;
    case RhoPolicy::kHalfRandom: {
      std::vector<int> order(s.num_ues);
      for (int i = 0; i < s.num_ues; ++i) order[i] = i;
      std::shuffle(order.begin(), order.end(), placement);
      for (int i = 0; i < s.num_ues / 2; ++i) ues[order[i]].rho = u01(placement);
      break;
    }
  }
  return ues;
}

std::vector<UserApp> make_apps(const Scenario& s,
                               std::vector<UserEquipment>& ues, Rng& traffic) {
  std::uniform_int_distribution<int> cls(1, s.num_classes);
  std::vector<UserApp> apps;
  for (auto& ue : ues) {
    for (int j = 0; j < s.uas_per_ue; ++j) {
      UserApp ua;
      ua.id = static_cast<UaId>(apps.size());
      ua.ue = ue.id;
      ua.qos_class = cls(traffic);
      ua.total_bits = s.bits_for_class(ua.qos_class);
      ua.remaining_bits = ua.total_bits;
      ue.apps.push_back(ua.id);
      apps.push_back(ua);
    }
  }
  return apps;
}

// Completed-in-this-slot counts of the UAs in `band_set`.
int completed(const std::set<UaId>& band_set,
              const std::vector<UserApp>& before,
              const std::vector<UserApp>& after) {
  int n = 0;
  for (UaId a : band_set) {
    if (before[a].remaining_bits > 0.0 && after[a].remaining_bits <= 0.0) ++n;
  }
  return n;
}

}  // namespace

void Scenario::validate() const {
  if (num_ues < 1) bad("scenario.num_ues must be >= 1");
  if (uas_per_ue < 1) bad("scenario.uas_per_ue must be >= 1");
  if (num_classes < 1) bad("scenario.num_classes must be >= 1");
  if (!(bits_per_ua >= 0.0)) bad("scenario.bits_per_ua must be >= 0");
  if (!bits_per_class.empty() &&
      static_cast<int>(bits_per_class.size()) != num_classes) {
    bad("scenario.bits_per_class must list one value per class");
  }
  for (double b : bits_per_class) {
    if (!(b >= 0.0)) bad("scenario.bits_per_class must be >= 0");
  }
  if (!(min_distance_m > 0.0 && min_distance_m < max_distance_m)) {
    bad("scenario.min_distance_m must be in (0, max_distance_m)");
  }
  if (!(edge_distance_m >= 0.0)) bad("scenario.edge_distance_m must be >= 0");
  if (drops < 1) bad("run.drops must be >= 1");
  radio.validate();
  learning.validate();
}

double Scenario::bits_for_class(int j) const {
  if (bits_per_class.empty()) return bits_per_ua;
  return bits_per_class.at(j - 1);
}

DropResult run_drop(const Scenario& s, int drop, const SlotObserver& observer) {
  const RadioConfig& radio = s.radio;
  const int J = s.num_classes;
  Rng placement = make_rng(s.seed, drop, Stream::kPlacement);
  Rng shadowing = make_rng(s.seed, drop, Stream::kShadowing);
  Rng traffic = make_rng(s.seed, drop, Stream::kTraffic);
  Rng fading = make_rng(s.seed, drop, Stream::kFading);
  Rng blockage = make_rng(s.seed, drop, Stream::kBlockage);
  Rng learning = make_rng(s.seed, drop, Stream::kLearning);

  std::vector<UserEquipment> ues = place_ues(s, placement, shadowing);
  std::vector<UserApp> apps = make_apps(s, ues, traffic);

  const bool learn = s.scheduler == SchedulerKind::kContext &&
                     s.classification == Classification::kLearned;
  std::vector<LosLearner> learners;
  if (learn) {
    learners.assign(ues.size(), LosLearner(s.learning));
    for (std::size_t i = 0; i < ues.size(); ++i) {
      learners[i].train(ues[i].rho, s.learning.warmup_steps, learning);
    }
  }
  const double rho_th = rho_threshold(s.learning.rewards);
  PfState pf;

  DropResult res;
  res.drop = drop;
  res.num_uas = static_cast<int>(apps.size());
  res.class_sizes.assign(J, 0);
  for (const UserApp& ua : apps) ++res.class_sizes[ua.qos_class - 1];

  for (int t = 1; t <= J; ++t) {
    UwChannelState uw_ch = draw_uw_channel(s.num_ues, radio.k1, fading);
    MmwChannelState mmw_ch = draw_mmw_channel(ues, radio.k2, radio.rician_k,
                                              fading, blockage);

    std::vector<bool> prefers(ues.size(), true);
    for (std::size_t i = 0; i < ues.size(); ++i) {
      if (s.classification == Classification::kOracle) {
        prefers[i] = ues[i].rho >= rho_th;
      } else if (learn) {
        prefers[i] = learners[i].prefers_mmw();
      }
    }
    ContextInfo ctx = build_context(apps, ues, t, &prefers);

    // Rates are a per-UE property; every UA of a UE shares them.
    std::vector<std::vector<double>> ue_uw(ues.size());
    std::vector<double> ue_mmw(ues.size());
    for (const UserEquipment& ue : ues) {
      ue_uw[ue.id].resize(radio.k1);
      for (int k = 0; k < radio.k1; ++k) {
        ue_uw[ue.id][k] = rate_uw(ue, k, uw_ch, radio);
      }
      ue_mmw[ue.id] = planning_rate_mmw(ue, mmw_ch, radio);
    }
    UwRates uw_rates;
    MmwRates planned, realised;
    for (const ContextEntry& e : ctx.entries) {
      uw_rates[e.ua] = ue_uw[e.ue];
      planned[e.ua] = ue_mmw[e.ue];
      realised[e.ua] = mmw_ch.los[e.ue] ? ue_mmw[e.ue] : 0.0;
    }

    SlotDecision d;
    long uw_iter = 0, mmw_iter = 0;
    switch (s.scheduler) {
      case SchedulerKind::kContext: {
        d.rb_owner.assign(radio.k1, kNoUa);
        if (s.band != BandMode::kMmWaveOnly) {
          UwSchedule us = schedule_uw(ctx, uw_rates, radio);
          d.rb_owner = us.state.assignment;
          d.g1.insert(us.state.candidates.begin(), us.state.candidates.end());
          uw_iter = us.state.iteration_count;
        }
        if (s.band != BandMode::kMicrowaveOnly) {
          MmwSchedule ms = schedule_mmw(priority_groups_mmw(ctx, d.g1), ctx,
                                        planned, radio);
          d.tau = ms.tau;
          d.g2.insert(ms.members.begin(), ms.members.end());
          mmw_iter = ms.iteration_count;
        }
        break;
      }
      case SchedulerKind::kPfMrr:
        d = schedule_pf_mrr(ctx, uw_rates, planned, pf, radio, s.band);
        break;
      case SchedulerKind::kRoundRobin:
        d = schedule_rr(ctx, uw_rates, planned, radio, s.band);
        break;
    }

    std::map<UaId, double> delivered;
    double uw_sent = 0.0, mmw_sent = 0.0;
    for (int k = 0; k < radio.k1; ++k) {
      UaId a = d.rb_owner[k];
      if (a != kNoUa) delivered[a] += radio.tau_s * uw_rates.at(a)[k];
    }
    for (const auto& [a, bits] : deliver_mmw(d, realised)) delivered[a] += bits;
    for (auto& [a, bits] : delivered) {
      bits = credit_bits(apps[a].remaining_bits, bits);
      (d.g2.contains(a) ? mmw_sent : uw_sent) += bits;
    }

    std::vector<UserApp> before = apps;
    apply_delivery(apps, delivered);

    res.uw_bits.push_back(uw_sent);
    res.mmw_bits.push_back(mmw_sent);
    res.lambda1.push_back(completed(d.g1, before, apps));
    res.lambda2.push_back(completed(d.g2, before, apps));
    res.uw_iterations += uw_iter;
    res.mmw_iterations += mmw_iter;

    if (observer) {
      SlotRecord rec;
      rec.slot = t;
      rec.scenario = &s;
      rec.ctx = &ctx;
      rec.decision = &d;
      rec.uw_rates = &uw_rates;
      rec.mmw_planned = &planned;
      rec.mmw_realised = &realised;
      rec.apps_before = &before;
      rec.apps_after = &apps;
      rec.uw_iterations = uw_iter;
      rec.mmw_iterations = mmw_iter;
      observer(rec);
    }

    if (s.scheduler == SchedulerKind::kPfMrr) pf.update(ctx, delivered, radio.tau_s);

    if (learn) {
      // A UE's link this slot: mmW if any of its UAs used mmW, microwave if
      // only microwave, unobserved otherwise.
      std::vector<int> used(ues.size(), 0);  // 0 none, 1 microwave, 2 mmW
      for (UaId a : d.g1) used[apps[a].ue] = std::max(used[apps[a].ue], 1);
      for (UaId a : d.g2) used[apps[a].ue] = 2;
      for (std::size_t i = 0; i < ues.size(); ++i) {
        if (used[i] == 0) continue;
        LinkState next = used[i] == 1 ? LinkState::kMicrowave
                         : mmw_ch.los[i] ? LinkState::kMmwLos
                                         : LinkState::kMmwBlocked;
        bool was_mmw = learners[i].table().current != LinkState::kMicrowave;
        bool is_mmw = next != LinkState::kMicrowave;
        learners[i].observe(was_mmw == is_mmw ? Decision::kStay
                                              : Decision::kSwitch,
                            next);
      }
    }
  }

  res.satisfied_per_ue.assign(ues.size(), 0);
  for (const UserApp& ua : apps) {
    int ok = qos_indicator(ua);
    res.satisfied += ok;
    res.satisfied_per_ue[ua.ue] += ok;
  }
  res.outage = outage_probability(apps);
  res.prefers_mmw.assign(ues.size(), true);
  for (std::size_t i = 0; i < ues.size(); ++i) {
    if (learn) {
      res.prefers_mmw[i] = learners[i].prefers_mmw();
    } else if (s.classification == Classification::kOracle) {
      res.prefers_mmw[i] = ues[i].rho >= rho_th;
    }
  }
  return res;
}

std::vector<DropResult> run_drops(const Scenario& s, int parallel) {
  s.validate();
  std::vector<DropResult> out(s.drops);
  int workers = std::clamp(parallel, 1, s.drops);
  if (workers == 1) {
    for (int i = 0; i < s.drops; ++i) out[i] = run_drop(s, i);
    return out;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next++; i < s.drops; i = next++) {
          try {
            out[i] = run_drop(s, i);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::kContext: return "context";
    case SchedulerKind::kPfMrr: return "pfmrr";
    case SchedulerKind::kRoundRobin: return "rr";
  }
  return "?";
}

std::string to_string(BandMode m) {
  switch (m) {
    case BandMode::kDual: return "dual";
    case BandMode::kMicrowaveOnly: return "uw";
    case BandMode::kMmWaveOnly: return "mmw";
  }
  return "?";
}

std::string to_string(RhoPolicy p) {
  switch (p) {
    case RhoPolicy::kAllOne: return "all_one";
    case RhoPolicy::kEdgeRandom: return "edge_random";
    case RhoPolicy::kHalfRandom: return "half_random";
    case RhoPolicy::kUniform: return "uniform";
  }
  return "?";
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::kLearned: return "learned";
    case Classification::kOracle: return "oracle";
    case Classification::kNone: return "none";
  }
  return "?";
}

SchedulerKind parse_scheduler(const std::string& s) {
  if (s == "context") return SchedulerKind::kContext;
  if (s == "pfmrr") return SchedulerKind::kPfMrr;
  if (s == "rr") return SchedulerKind::kRoundRobin;
  bad("unknown scheduler '" + s + "'");
}

BandMode parse_band(const std::string& s) {
  if (s == "dual") return BandMode::kDual;
  if (s == "uw") return BandMode::kMicrowaveOnly;
  if (s == "mmw") return BandMode::kMmWaveOnly;
  bad("unknown band '" + s + "'");
}

RhoPolicy parse_rho_policy(const std::string& s) {
  if (s == "all_one") return RhoPolicy::kAllOne;
  if (s == "edge_random") return RhoPolicy::kEdgeRandom;
  if (s == "half_random") return RhoPolicy::kHalfRandom;
  if (s == "uniform") return RhoPolicy::kUniform;
  bad("unknown rho_policy '" + s + "'");
}

Classification parse_classification(const std::string& s) {
  if (s == "learned") return Classification::kLearned;
  if (s == "oracle") return Classification::kOracle;
  if (s == "none") return Classification::kNone;
  bad("unknown classification '" + s + "'");
}

namespace {

int to_int(const std::string& v, const std::string& name) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    bad("sweep value '" + v + "' for " + name + " is not a number");
  }
  if (used != v.size() || d != std::floor(d)) {
    bad("sweep value '" + v + "' for " + name + " is not an integer");
  }
  return static_cast<int>(d);
}

double to_double(const std::string& v, const std::string& name) {
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    bad("sweep value '" + v + "' for " + name + " is not a number");
  }
  if (used != v.size()) bad("sweep value '" + v + "' for " + name);
  return d;
}

}  // namespace

void apply_sweep(Scenario& s, const std::string& variable,
                 const std::string& value) {
  if (variable == "num_ues") {
    s.num_ues = to_int(value, variable);
  } else if (variable == "uas_per_ue") {
    s.uas_per_ue = to_int(value, variable);
  } else if (variable == "num_classes") {
    s.num_classes = to_int(value, variable);
  } else if (variable == "bits_per_ua") {
    s.bits_per_ua = to_double(value, variable);
  } else if (variable == "tau_prime_s") {
    s.radio.tau_prime_s = to_double(value, variable);
  } else if (variable == "band") {
    s.band = parse_band(value);
  } else if (variable == "rho_policy") {
    s.rho_policy = parse_rho_policy(value);
  } else if (variable == "classification") {
    s.classification = parse_classification(value);
  } else {
    bad("unknown sweep variable '" + variable + "'");
  }
}

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec) {
  std::vector<std::string> values = spec.sweep.values;
  if (spec.sweep.variable.empty()) values = {""};

  std::vector<ExperimentRow> rows;
  for (const std::string& v : values) {
    for (SchedulerKind kind : spec.schedulers) {
      ExperimentRow row;
      row.variable = spec.sweep.variable;
      row.value = v;
      row.scenario = spec.base;
      if (!row.variable.empty()) apply_sweep(row.scenario, row.variable, v);
      row.scenario.scheduler = kind;
      const Scenario& sc = row.scenario;

      std::vector<DropResult> drops = run_drops(sc, spec.parallel);
      const double n = static_cast<double>(drops.size());
      const int J = sc.num_classes;
      row.ue_histogram.assign(sc.uas_per_ue + 1, 0.0);
      row.uw_bits.assign(J, 0.0);
      row.mmw_bits.assign(J, 0.0);
      long satisfied = 0;
      for (const DropResult& r : drops) {
        row.outage_samples.push_back(r.outage);
        satisfied += r.satisfied;
        for (int c : r.satisfied_per_ue) {
          row.ue_histogram[c] += 1.0 / (n * sc.num_ues);
        }
        for (int t = 0; t < J; ++t) {
          row.uw_bits[t] += r.uw_bits[t] / n;
          row.mmw_bits[t] += r.mmw_bits[t] / n;
        }
        row.mean_iterations +=
            static_cast<double>(r.uw_iterations + r.mmw_iterations) / n;
      }
      row.outage = mean_ci95(row.outage_samples);
      row.mean_satisfied = static_cast<double>(satisfied) / n;

      if (spec.ql_gain && kind == SchedulerKind::kContext &&
          sc.classification != Classification::kNone) {
        Scenario blind = sc;
        blind.classification = Classification::kNone;
        long base = 0;
        for (const DropResult& r : run_drops(blind, spec.parallel)) {
          base += r.satisfied;
        }
        row.ql_gain = base > 0 ? static_cast<double>(satisfied) / base
                               : std::numeric_limits<double>::quiet_NaN();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace dualband
