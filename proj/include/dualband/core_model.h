#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace dualband {

// UE and UA ids are dense indices into the owning vectors of a drop.
using UeId = int;
using UaId = int;
inline constexpr UaId kNoUa = -1;

// Relative slack used whenever delivered bits are compared with a demand.
inline constexpr double kBitsRelTol = 1e-9;
// Absolute slack on airtime sums, in seconds.
inline constexpr double kTimeTol = 1e-12;

enum class Band { kMicrowave, kMmWave };
enum class BandMode { kDual, kMicrowaveOnly, kMmWaveOnly };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance_to_bs(Point p);

struct UserEquipment {
  UeId id = 0;
  Point position;
  double rho = 1.0;  // LoS probability of the mmW link
  double shadow_uw_db = 0.0;
  double shadow_mmw_db = 0.0;
  std::vector<UaId> apps;
};

struct UserApp {
  UaId id = 0;
  UeId ue = 0;
  int qos_class = 1;  // deadline slot, 1..J
  double total_bits = 0.0;
  double remaining_bits = 0.0;
  std::vector<double> received_log;  // bits received in slot 1, 2, ...

  bool satisfied() const { return remaining_bits <= 0.0; }
};

// 1 iff the UA received its full payload by its deadline. Throws
// std::logic_error while the deadline slot has not been logged yet.
int qos_indicator(const UserApp& ua);

// Bits actually credited when `deliverable` bits could be sent against
// `remaining`. Rounding noise within kBitsRelTol completes the transfer.
double credit_bits(double remaining, double deliverable);

// Appends one slot of received bits to every UA (zero when absent from
// `delivered`) and updates the remaining load.
void apply_delivery(std::span<UserApp> apps,
                    const std::map<UaId, double>& delivered);

struct ContextEntry {
  UaId ua = 0;
  UeId ue = 0;
  int deadline = 1;
  double required_bits = 0.0;
  double rho = 1.0;
  bool los_preferred = true;  // learned or oracle LoS classification
};

// Snapshot the BS takes at the start of slot t. Only UAs that are still
// alive (deadline >= t) and still owe bits are listed.
struct ContextInfo {
  int slot = 1;
  std::vector<ContextEntry> entries;  // sorted by UA id

  const ContextEntry* find(UaId ua) const;
  const ContextEntry& at(UaId ua) const;
  std::map<int, std::vector<UaId>> alive_classes() const;
  std::map<UaId, double> required_loads() const;
  std::map<UaId, double> los_probs() const;
};

// `ue_prefers_mmw`, when given, is indexed by UE id; otherwise every UA is
// marked LoS-preferred.
ContextInfo build_context(std::span<const UserApp> apps,
                          std::span<const UserEquipment> ues, int slot,
                          const std::vector<bool>* ue_prefers_mmw = nullptr);

struct SlotDecision {
  std::vector<UaId> rb_owner;  // per microwave RB; kNoUa when idle
  std::map<UaId, double> tau;  // mmW airtime in seconds
  std::set<UaId> g1;           // served on microwave
  std::set<UaId> g2;           // served on mmW

  bool x(UaId ua, int rb) const { return rb_owner.at(rb) == ua; }
  std::vector<int> rbs_of(UaId ua) const;
};

// Structural checks of one slot decision: one owner per RB, only G1 owns
// RBs, disjoint bands, airtime budget including beam alignment. Returns a
// human-readable line per violation.
std::vector<std::string> check_slot_decision(const SlotDecision& d, int k1,
                                             double tau, double tau_prime);

}  // namespace dualband
