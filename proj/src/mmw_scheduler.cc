#include "dualband/mmw_scheduler.h"

#include <algorithm>

namespace dualband {

MmwTiers priority_groups_mmw(const ContextInfo& ctx,
                             const std::set<UaId>& on_microwave) {
  MmwTiers tiers;
  for (const ContextEntry& e : ctx.entries) {
    if (e.required_bits <= 0.0 || e.deadline < ctx.slot) continue;
    if (on_microwave.contains(e.ua)) continue;
    int tier = (e.los_preferred ? 0 : 2) + (e.deadline == ctx.slot ? 0 : 1);
    tiers[tier].push_back(e.ua);
  }
  return tiers;
}

MmwSchedule schedule_mmw(const MmwTiers& tiers, const ContextInfo& ctx,
                         const MmwRates& rates, const RadioConfig& cfg) {
  MmwSchedule out;
  double used = 0.0;  // airtime plus beam alignment of admitted UAs
  for (int i = 0; i < 4; ++i) {
    std::vector<MmwCandidate> cands;
    for (UaId a : tiers[i]) {
      double r = rates.at(a);
      if (r <= 0.0) continue;
      const ContextEntry& e = ctx.at(a);
      cands.push_back({a, e.required_bits / r, i, e.los_preferred});
    }
    std::sort(cands.begin(), cands.end(),
              [](const MmwCandidate& x, const MmwCandidate& y) {
                if (x.required_time != y.required_time) {
                  return x.required_time < y.required_time;
                }
                return x.ua < y.ua;
              });
    for (const MmwCandidate& c : cands) {
      ++out.iteration_count;
      double need = c.required_time + cfg.tau_prime_s;
      if (used + need > cfg.tau_s + kTimeTol) break;
      used += need;
      out.tau[c.ua] = c.required_time;
      out.members.push_back(c.ua);
    }
  }
  return out;
}

std::map<UaId, double> deliver_mmw(const SlotDecision& d,
                                   const MmwRates& realised) {
  std::map<UaId, double> out;
  for (UaId a : d.g2) {
    auto t = d.tau.find(a);
    double secs = t == d.tau.end() ? 0.0 : t->second;
    out[a] = secs * realised.at(a);
  }
  return out;
}

}  // namespace dualband
