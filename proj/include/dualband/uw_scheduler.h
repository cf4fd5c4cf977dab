#pragma once

#include <map>
#include <span>
#include <vector>

#include "dualband/channel.h"
#include "dualband/core_model.h"

namespace dualband {

// Achievable rate of each UA on each microwave RB, bit/s.
using UwRates = std::map<UaId, std::vector<double>>;

struct UwGroups {
  std::vector<UaId> due_now;     // deadline == t
  std::vector<UaId> deferrable;  // deadline > t
};

UwGroups priority_groups_uw(const ContextInfo& ctx);

// UA of `group` with the smallest required-bits to total-rate ratio; ties go
// to the lower id. UAs with zero total rate are skipped and if no UA is left
// std::invalid_argument is thrown.
UaId next_candidate(std::span<const UaId> group, const ContextInfo& ctx,
                    const UwRates& rates);

struct MatchState {
  std::vector<UaId> assignment;  // per RB, kNoUa when free
  std::vector<UaId> candidates;  // current G1, in admission order
  std::map<UaId, std::vector<bool>> applicable;  // K_a as a mask over RBs
  long iteration_count = 0;                      // proposals made

  std::vector<int> rbs_of(UaId ua) const;
  double held_rate(UaId ua, const UwRates& rates) const;
};

bool is_satisfied(UaId ua, const MatchState& s, const ContextInfo& ctx,
                  const UwRates& rates, double tau);

// Value of `rb` to `ua`: its rate while the UA still needs bits, 0 after.
double ua_utility(UaId ua, int rb, const MatchState& s, const ContextInfo& ctx,
                  const UwRates& rates, double tau);

struct UwSchedule {
  MatchState state;
  int candidates_tried = 0;
  // Sum over trials of the number of members taking part. A UA proposes to
  // an RB at most once per trial, so iterations <= k1 * trial_members.
  long trial_members = 0;
};

// Deferred-acceptance style matching of UAs to microwave RBs. Candidates
// join one at a time (due-now group first); a trial whose newcomer leaves
// any member short is rolled back as if it never ran.
UwSchedule schedule_uw(const ContextInfo& ctx, const UwRates& rates,
                       const RadioConfig& cfg);

struct BlockingPair {
  UaId ua;
  int rb;
  bool operator==(const BlockingPair&) const = default;
};

// (a, k) blocks when k is free or its holder is worse for k than a, and a
// either still lacks bits or holds an RB it ranks below k.
std::vector<BlockingPair> find_blocking_pairs(
    std::span<const UaId> assignment, std::span<const UaId> players,
    const ContextInfo& ctx, const UwRates& rates, double tau);

bool is_stable(std::span<const UaId> assignment, std::span<const UaId> players,
               const ContextInfo& ctx, const UwRates& rates, double tau);

// Deliverable bits per member of a finished match.
std::map<UaId, double> deliver_uw(const MatchState& s, const UwRates& rates,
                                  double tau);

}  // namespace dualband
