#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dualband/analytics.h"
#include "dualband/channel.h"
#include "dualband/core_model.h"
#include "dualband/los_learning.h"
#include "dualband/mmw_scheduler.h"
#include "dualband/uw_scheduler.h"

namespace dualband {

enum class SchedulerKind { kContext, kPfMrr, kRoundRobin };
// How per-UE LoS probabilities are drawn. "Edge" UEs are farther than
// Scenario::edge_distance_m from the BS.
enum class RhoPolicy { kAllOne, kEdgeRandom, kHalfRandom, kUniform };
// Source of the LoS-preferred flag used by the mmW tiers.
enum class Classification { kLearned, kOracle, kNone };

struct Scenario {
  int num_ues = 30;
  int uas_per_ue = 3;
  int num_classes = 5;
  double bits_per_ua = 1e6;
  std::vector<double> bits_per_class;  // overrides bits_per_ua when set
  RhoPolicy rho_policy = RhoPolicy::kAllOne;
  double edge_distance_m = 66.0;
  double min_distance_m = 5.0;
  double max_distance_m = 100.0;
  SchedulerKind scheduler = SchedulerKind::kContext;
  BandMode band = BandMode::kDual;
  Classification classification = Classification::kLearned;
  RadioConfig radio;
  LearningConfig learning;
  std::uint64_t seed = 1;
  int drops = 100;

  void validate() const;
  double bits_for_class(int j) const;
  bool operator==(const Scenario&) const = default;
};

struct SlotRecord {
  int slot = 0;
  const Scenario* scenario = nullptr;
  const ContextInfo* ctx = nullptr;
  const SlotDecision* decision = nullptr;
  const UwRates* uw_rates = nullptr;
  const MmwRates* mmw_planned = nullptr;
  const MmwRates* mmw_realised = nullptr;
  const std::vector<UserApp>* apps_before = nullptr;
  const std::vector<UserApp>* apps_after = nullptr;
  long uw_iterations = 0;
  long mmw_iterations = 0;
};

using SlotObserver = std::function<void(const SlotRecord&)>;

struct DropResult {
  int drop = 0;
  int num_uas = 0;
  int satisfied = 0;
  double outage = 0.0;
  std::vector<double> uw_bits;   // per slot
  std::vector<double> mmw_bits;  // per slot
  std::vector<int> lambda1;      // UAs completed on microwave, per slot
  std::vector<int> lambda2;      // UAs completed on mmW, per slot
  long uw_iterations = 0;
  long mmw_iterations = 0;
  std::vector<int> class_sizes;        // A_j, j = 1..J
  std::vector<int> satisfied_per_ue;
  std::vector<bool> prefers_mmw;       // classification at the end of drop
};

DropResult run_drop(const Scenario& s, int drop,
                    const SlotObserver& observer = nullptr);

// Drops 0..s.drops-1 on up to `parallel` threads. Results are ordered by
// drop and do not depend on `parallel`.
std::vector<DropResult> run_drops(const Scenario& s, int parallel);

struct Sweep {
  std::string variable;             // empty for a single point
  std::vector<std::string> values;  // textual, applied by apply_sweep
};

// Sets one scenario field from its textual value. Throws
// std::invalid_argument for unknown variables or values.
void apply_sweep(Scenario& s, const std::string& variable,
                 const std::string& value);

struct ExperimentSpec {
  Scenario base;
  Sweep sweep;
  std::vector<SchedulerKind> schedulers{SchedulerKind::kContext};
  bool ql_gain = false;
  int parallel = 1;
};

struct ExperimentRow {
  std::string variable;
  std::string value;
  Scenario scenario;
  MeanCi outage;
  double mean_satisfied = 0.0;
  std::vector<double> ue_histogram;  // share of UEs with i satisfied UAs
  std::vector<double> uw_bits;       // mean per slot
  std::vector<double> mmw_bits;      // mean per slot
  double mean_iterations = 0.0;
  std::optional<double> ql_gain;
  std::vector<double> outage_samples;  // per drop
};

std::vector<ExperimentRow> run_experiment(const ExperimentSpec& spec);

std::string to_string(SchedulerKind k);
std::string to_string(BandMode m);
std::string to_string(RhoPolicy p);
std::string to_string(Classification c);
SchedulerKind parse_scheduler(const std::string& s);
BandMode parse_band(const std::string& s);
RhoPolicy parse_rho_policy(const std::string& s);
Classification parse_classification(const std::string& s);

}  // namespace dualband
