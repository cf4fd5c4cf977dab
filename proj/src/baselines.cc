#include "dualband/baselines.h"

#include <algorithm>
#include <cmath>

namespace dualband {

namespace {

std::vector<UaId> due_now(const ContextInfo& ctx) {
  std::vector<UaId> out;
  for (const ContextEntry& e : ctx.entries) {
    if (e.deadline == ctx.slot && e.required_bits > 0.0) out.push_back(e.ua);
  }
  return out;
}

std::vector<UaId> left_for_mmw(const ContextInfo& ctx,
                               const std::set<UaId>& g1) {
  std::vector<UaId> out;
  for (const ContextEntry& e : ctx.entries) {
    if (e.required_bits > 0.0 && !g1.contains(e.ua)) out.push_back(e.ua);
  }
  return out;
}

SlotDecision empty_decision(int k1) {
  SlotDecision d;
  d.rb_owner.assign(k1, kNoUa);
  return d;
}

}  // namespace

double PfState::average(UaId ua) const {
  auto it = avg_.find(ua);
  return it == avg_.end() ? floor_ : it->second;
}

void PfState::update(const ContextInfo& ctx,
                     const std::map<UaId, double>& served, double tau) {
  const double beta = 1.0 / window_;
  for (const ContextEntry& e : ctx.entries) {
    auto it = served.find(e.ua);
    double rate = it == served.end() ? 0.0 : it->second / tau;
    double next = (1.0 - beta) * average(e.ua) + beta * rate;
    avg_[e.ua] = std::max(next, floor_);
  }
}

SlotDecision schedule_pf_mrr(const ContextInfo& ctx, const UwRates& uw,
                             const MmwRates& mmw, const PfState& pf,
                             const RadioConfig& cfg, BandMode mode) {
  const double tau = cfg.tau_s;
  SlotDecision d = empty_decision(cfg.k1);
  auto metric = [&](UaId a, double rate) {
    double need = ctx.at(a).required_bits / tau;
    return rate / (pf.average(a) + need);
  };

  if (mode != BandMode::kMmWaveOnly) {
    std::vector<UaId> cands = due_now(ctx);
    for (int k = 0; k < cfg.k1 && !cands.empty(); ++k) {
      UaId best = kNoUa;
      double best_m = -1.0;
      for (UaId a : cands) {
        double m = metric(a, uw.at(a)[k]);
        if (m > best_m) {
          best = a;
          best_m = m;
        }
      }
      if (best_m <= 0.0) continue;
      d.rb_owner[k] = best;
      d.g1.insert(best);
    }
  }

  if (mode != BandMode::kMicrowaveOnly) {
    std::vector<UaId> cands = left_for_mmw(ctx, d.g1);
    std::erase_if(cands, [&mmw](UaId a) { return mmw.at(a) <= 0.0; });
    std::stable_sort(cands.begin(), cands.end(), [&](UaId a, UaId b) {
      return metric(a, mmw.at(a)) > metric(b, mmw.at(b));
    });
    double left = tau;
    for (UaId a : cands) {
      double share = left - cfg.tau_prime_s;
      if (share <= kTimeTol) break;
      double want = ctx.at(a).required_bits / mmw.at(a);
      double t = std::min(want, share);
      d.tau[a] = t;
      d.g2.insert(a);
      left -= t + cfg.tau_prime_s;
      if (t < want) break;
    }
  }
  return d;
}

SlotDecision schedule_rr(const ContextInfo& ctx, const UwRates& uw,
                         const MmwRates& mmw, const RadioConfig& cfg,
                         BandMode mode) {
  (void)uw;
  SlotDecision d = empty_decision(cfg.k1);

  if (mode != BandMode::kMmWaveOnly) {
    std::vector<UaId> cands = due_now(ctx);
    const int n = static_cast<int>(cands.size());
    int k = 0;
    for (int i = 0; i < n && k < cfg.k1; ++i) {
      int share = cfg.k1 / n + (i < cfg.k1 % n ? 1 : 0);
      for (int j = 0; j < share; ++j) d.rb_owner[k++] = cands[i];
      if (share > 0) d.g1.insert(cands[i]);
    }
  }

  if (mode != BandMode::kMicrowaveOnly) {
    std::vector<UaId> cands = left_for_mmw(ctx, d.g1);
    std::erase_if(cands, [&mmw](UaId a) { return mmw.at(a) <= 0.0; });
    const int n = static_cast<int>(cands.size());
    if (n > 0) {
      int fit = n;
      if (cfg.tau_prime_s > 0.0) {
        int cap = static_cast<int>(std::ceil(cfg.tau_s / cfg.tau_prime_s)) - 1;
        fit = std::clamp(cap, 0, n);
      }
      if (fit > 0) {
        int start = fit < n ? ((ctx.slot - 1) * fit) % n : 0;
        double share = (cfg.tau_s - fit * cfg.tau_prime_s) / fit;
        for (int i = 0; i < fit; ++i) {
          UaId a = cands[(start + i) % n];
          d.tau[a] = share;
          d.g2.insert(a);
        }
      }
    }
  }
  return d;
}

}  // namespace dualband
