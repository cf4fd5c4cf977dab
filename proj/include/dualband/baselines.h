#pragma once

#include <map>

#include "dualband/channel.h"
#include "dualband/core_model.h"
#include "dualband/mmw_scheduler.h"
#include "dualband/uw_scheduler.h"

namespace dualband {

// Exponentially averaged served throughput per UA, bit/s.
class PfState {
 public:
  explicit PfState(double window_slots = 5.0, double floor_bps = 1.0)
      : window_(window_slots), floor_(floor_bps) {}

  double average(UaId ua) const;
  // Folds one slot of served bits into every listed UA's average.
  void update(const ContextInfo& ctx, const std::map<UaId, double>& served,
              double tau);

 private:
  double window_;
  double floor_;
  std::map<UaId, double> avg_;
};

// Microwave RBs go, one by one, to the due-now UA with the best
// rate / (average + required rate). The mmW slot is then filled in the same
// metric order among UAs left without RBs; the last admitted UA may get a
// partial share so that the whole budget is used.
SlotDecision schedule_pf_mrr(const ContextInfo& ctx, const UwRates& uw,
                             const MmwRates& mmw, const PfState& pf,
                             const RadioConfig& cfg, BandMode mode);

// Equal split of microwave RBs among due-now UAs (remainder to the lowest
// ids) and an equal split of mmW airtime among the others. When beam
// alignment leaves no time for everyone, the served subset rotates with t.
SlotDecision schedule_rr(const ContextInfo& ctx, const UwRates& uw,
                         const MmwRates& mmw, const RadioConfig& cfg,
                         BandMode mode);

}  // namespace dualband
