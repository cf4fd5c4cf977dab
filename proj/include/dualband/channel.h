#pragma once

#include <span>
#include <vector>

#include "dualband/core_model.h"
#include "dualband/rng.h"

namespace dualband {

// Radio parameters. Powers in dBm, bandwidths in Hz, times in seconds.
struct RadioConfig {
  double p1_dbm = 30.0;
  double p2_dbm = 30.0;
  double uw_bandwidth_hz = 10e6;
  double mmw_bandwidth_hz = 1e9;
  int k1 = 50;
  int k2 = 512;
  double w1_hz = 180e3;
  double n0_dbm_hz = -174.0;
  double psi_dbi = 18.0;
  double alpha1 = 3.0;
  double beta1_db = 38.0;
  double xi1_db = 10.0;
  double alpha2 = 2.0;
  double beta2_db = 70.0;
  double xi2_db = 5.2;
  double rician_k = 2.4;
  double tau_s = 10e-3;
  double tau_prime_s = 0.1e-3;

  double w2_hz() const { return mmw_bandwidth_hz / k2; }
  // Throws std::invalid_argument naming the first bad field.
  void validate() const;

  bool operator==(const RadioConfig&) const = default;
};

double dbm_to_watts(double dbm);
double db_to_linear(double db);

double pathloss_uw_db(double distance_m, double shadow_db,
                      const RadioConfig& cfg);
double pathloss_mmw_db(double distance_m, double shadow_db,
                       const RadioConfig& cfg);

// Shannon rate of one RB in bit/s. `power_w` is the per-RB transmit power and
// `gain` the linear antenna gain applied on top of the small-scale power.
double rb_rate(double bandwidth_hz, double power_w, double gain,
               double fading_power, double pathloss_db, double n0_dbm_hz);

// Small-scale power gains |g|^2 per UE and RB.
struct UwChannelState {
  std::vector<std::vector<double>> gains;  // [ue][rb]
};

struct MmwChannelState {
  std::vector<std::vector<double>> gains;  // [ue][rb]
  std::vector<bool> los;                   // zeta per UE
};

// Unit-mean exponential, i.e. |g|^2 of a Rayleigh tap.
double draw_rayleigh_power(Rng& rng);
// |h|^2 of a unit-mean-power Rician tap with factor `k`.
double draw_rician_power(double k, Rng& rng);

UwChannelState draw_uw_channel(int num_ues, int k1, Rng& fading);
MmwChannelState draw_mmw_channel(std::span<const UserEquipment> ues, int k2,
                                 double rician_k, Rng& fading, Rng& blockage);

double rate_uw(const UserEquipment& ue, int rb, const UwChannelState& ch,
               const RadioConfig& cfg);
// Sum over all mmW RBs, zero when the link is blocked this slot.
double rate_mmw(const UserEquipment& ue, const MmwChannelState& ch,
                const RadioConfig& cfg);
// Same sum assuming the LoS link is up; what a scheduler plans with.
double planning_rate_mmw(const UserEquipment& ue, const MmwChannelState& ch,
                         const RadioConfig& cfg);

}  // namespace dualband
