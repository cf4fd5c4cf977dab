#pragma once

#include <array>
#include <map>
#include <set>
#include <vector>

#include "dualband/channel.h"
#include "dualband/core_model.h"

namespace dualband {

// Planning rate per UA on the whole mmW band, bit/s.
using MmwRates = std::map<UaId, double>;

struct MmwCandidate {
  UaId ua = kNoUa;
  double required_time = 0.0;
  int tier = 0;  // 0..3
  bool classified_los = true;
};

// Tier 0: due now and LoS-preferred. Tier 1: later and LoS-preferred.
// Tier 2: due now, not LoS-preferred. Tier 3: later, not LoS-preferred.
using MmwTiers = std::array<std::vector<UaId>, 4>;

// Alive UAs that still owe bits and are not already on microwave.
MmwTiers priority_groups_mmw(const ContextInfo& ctx,
                             const std::set<UaId>& on_microwave);

struct MmwSchedule {
  std::map<UaId, double> tau;
  std::vector<UaId> members;  // admission order
  long iteration_count = 0;
};

// Greedy airtime fill. Within a tier, shortest required time first. The
// first UA of a tier that does not fit ends that tier and the next tier is
// tried.
MmwSchedule schedule_mmw(const MmwTiers& tiers, const ContextInfo& ctx,
                         const MmwRates& rates, const RadioConfig& cfg);

// Bits each G2 member can receive given the realised blockage state.
std::map<UaId, double> deliver_mmw(const SlotDecision& d,
                                   const MmwRates& realised);

}  // namespace dualband
