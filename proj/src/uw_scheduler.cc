#include "dualband/uw_scheduler.h"

#include <algorithm>
#include <stdexcept>

namespace dualband {

namespace {

double total_rate(const std::vector<double>& r) {
  double s = 0.0;
  for (double v : r) s += v;
  return s;
}

// RB-side preference: higher rate wins, lower UA id breaks ties.
bool rb_prefers(int rb, UaId a, UaId b, const UwRates& rates) {
  if (b == kNoUa) return true;
  double ra = rates.at(a)[rb];
  double rb_ = rates.at(b)[rb];
  if (ra != rb_) return ra > rb_;
  return a < b;
}

// UA-side ranking of RBs: higher rate first, lower index breaks ties.
bool ua_ranks_above(UaId a, int k, int other, const UwRates& rates) {
  const auto& r = rates.at(a);
  if (r[k] != r[other]) return r[k] > r[other];
  return k < other;
}

bool any_free(const std::vector<UaId>& assignment) {
  return std::find(assignment.begin(), assignment.end(), kNoUa) !=
         assignment.end();
}

// Runs proposal rounds until every member is satisfied or has no RB left to
// try.
void propose_until_settled(MatchState& s, const ContextInfo& ctx,
                           const UwRates& rates, double tau) {
  const int k1 = static_cast<int>(s.assignment.size());
  std::vector<UaId> members = s.candidates;
  std::sort(members.begin(), members.end());
  while (true) {
    std::map<int, std::vector<UaId>> applicants;
    for (UaId a : members) {
      if (is_satisfied(a, s, ctx, rates, tau)) continue;
      // An unsatisfied UA values each RB at its rate, so the best remaining
      // RB is the top of its rate ranking.
      auto& mask = s.applicable[a];
      int best = -1;
      for (int k = 0; k < k1; ++k) {
        if (mask[k] && (best < 0 || ua_ranks_above(a, k, best, rates))) best = k;
      }
      if (best < 0) continue;
      mask[best] = false;
      ++s.iteration_count;
      applicants[best].push_back(a);
    }
    if (applicants.empty()) return;
    for (const auto& [k, list] : applicants) {
      UaId keep = s.assignment[k];
      for (UaId a : list) {
        if (rb_prefers(k, a, keep, rates)) keep = a;
      }
      s.assignment[k] = keep;
    }
  }
}

}  // namespace

UwGroups priority_groups_uw(const ContextInfo& ctx) {
  UwGroups g;
  for (const ContextEntry& e : ctx.entries) {
    if (e.required_bits <= 0.0) continue;
    if (e.deadline == ctx.slot) {
      g.due_now.push_back(e.ua);
    } else if (e.deadline > ctx.slot) {
      g.deferrable.push_back(e.ua);
    }
  }
  return g;
}

UaId next_candidate(std::span<const UaId> group, const ContextInfo& ctx,
                    const UwRates& rates) {
  UaId best = kNoUa;
  double best_ratio = 0.0;
  for (UaId a : group) {
    double r = total_rate(rates.at(a));
    if (r <= 0.0) continue;
    double ratio = ctx.at(a).required_bits / r;
    if (best == kNoUa || ratio < best_ratio ||
        (ratio == best_ratio && a < best)) {
      best = a;
      best_ratio = ratio;
    }
  }
  if (best == kNoUa) throw std::invalid_argument("no servable candidate");
  return best;
}

std::vector<int> MatchState::rbs_of(UaId ua) const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(assignment.size()); ++k) {
    if (assignment[k] == ua) out.push_back(k);
  }
  return out;
}

double MatchState::held_rate(UaId ua, const UwRates& rates) const {
  const auto& r = rates.at(ua);
  double s = 0.0;
  for (int k = 0; k < static_cast<int>(assignment.size()); ++k) {
    if (assignment[k] == ua) s += r[k];
  }
  return s;
}

bool is_satisfied(UaId ua, const MatchState& s, const ContextInfo& ctx,
                  const UwRates& rates, double tau) {
  return tau * s.held_rate(ua, rates) >= ctx.at(ua).required_bits;
}

double ua_utility(UaId ua, int rb, const MatchState& s, const ContextInfo& ctx,
                  const UwRates& rates, double tau) {
  if (is_satisfied(ua, s, ctx, rates, tau)) return 0.0;
  return rates.at(ua).at(rb);
}

UwSchedule schedule_uw(const ContextInfo& ctx, const UwRates& rates,
                       const RadioConfig& cfg) {
  const double tau = cfg.tau_s;
  UwSchedule out;
  MatchState& s = out.state;
  s.assignment.assign(cfg.k1, kNoUa);

  UwGroups groups = priority_groups_uw(ctx);
  auto servable = [&rates](std::vector<UaId>& g) {
    std::erase_if(g, [&rates](UaId a) { return total_rate(rates.at(a)) <= 0.0; });
  };
  servable(groups.due_now);
  servable(groups.deferrable);

  while (any_free(s.assignment)) {
    std::vector<UaId>& pool =
        groups.due_now.empty() ? groups.deferrable : groups.due_now;
    if (pool.empty()) break;
    UaId a = next_candidate(pool, ctx, rates);
    std::erase(pool, a);
    ++out.candidates_tried;

    std::vector<UaId> before = s.assignment;
    auto masks_before = s.applicable;
    s.candidates.push_back(a);
    s.applicable[a].assign(cfg.k1, true);
    out.trial_members += static_cast<long>(s.candidates.size());
    propose_until_settled(s, ctx, rates, tau);

    bool all_ok = std::all_of(
        s.candidates.begin(), s.candidates.end(),
        [&](UaId m) { return is_satisfied(m, s, ctx, rates, tau); });
    if (!all_ok) {
      // Roll the whole trial back: the newcomer's RBs are released, displaced
      // members get their RBs back and may apply again where they applied
      // during the trial. The proposals still count as iterations.
      s.assignment = std::move(before);
      s.applicable = std::move(masks_before);
      s.candidates.pop_back();
    }
  }
  return out;
}

std::vector<BlockingPair> find_blocking_pairs(
    std::span<const UaId> assignment, std::span<const UaId> players,
    const ContextInfo& ctx, const UwRates& rates, double tau) {
  std::vector<BlockingPair> out;
  const int k1 = static_cast<int>(assignment.size());
  for (UaId a : players) {
    const auto& r = rates.at(a);
    std::vector<int> held;
    double got = 0.0;
    for (int k = 0; k < k1; ++k) {
      if (assignment[k] == a) {
        held.push_back(k);
        got += r[k];
      }
    }
    bool short_of_bits = tau * got < ctx.at(a).required_bits;
    for (int k = 0; k < k1; ++k) {
      if (assignment[k] == a) continue;
      if (!rb_prefers(k, a, assignment[k], rates)) continue;
      bool wants = short_of_bits && r[k] > 0.0;
      for (int h : held) {
        if (wants) break;
        wants = ua_ranks_above(a, k, h, rates);
      }
      if (wants) out.push_back({a, k});
    }
  }
  return out;
}

bool is_stable(std::span<const UaId> assignment, std::span<const UaId> players,
               const ContextInfo& ctx, const UwRates& rates, double tau) {
  return find_blocking_pairs(assignment, players, ctx, rates, tau).empty();
}

std::map<UaId, double> deliver_uw(const MatchState& s, const UwRates& rates,
                                  double tau) {
  std::map<UaId, double> out;
  for (UaId a : s.candidates) out[a] = tau * s.held_rate(a, rates);
  return out;
}

}  // namespace dualband
