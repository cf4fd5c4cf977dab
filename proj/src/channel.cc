#include "dualband/channel.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dualband {

namespace {

void require(bool ok, const char* field) {
  if (!ok) throw std::invalid_argument(std::string("invalid radio.") + field);
}

}  // namespace

void RadioConfig::validate() const {
  require(uw_bandwidth_hz > 0.0, "uw_bandwidth_hz");
  require(mmw_bandwidth_hz > 0.0, "mmw_bandwidth_hz");
  require(k1 >= 1, "k1");
  require(k2 >= 1, "k2");
  require(w1_hz > 0.0, "w1_hz");
  require(k1 * w1_hz <= uw_bandwidth_hz * (1.0 + 1e-12), "k1");
  require(alpha1 > 0.0, "alpha1");
  require(alpha2 > 0.0, "alpha2");
  require(xi1_db >= 0.0, "xi1_db");
  require(xi2_db >= 0.0, "xi2_db");
  require(rician_k >= 0.0, "rician_k");
  require(tau_s > 0.0, "tau_s");
  require(tau_prime_s >= 0.0 && tau_prime_s < tau_s, "tau_prime_s");
  require(!std::isnan(p1_dbm) && !std::isnan(p2_dbm), "p1_dbm");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double pathloss_uw_db(double distance_m, double shadow_db,
                      const RadioConfig& cfg) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("singular distance");
  return cfg.beta1_db + 10.0 * cfg.alpha1 * std::log10(distance_m) + shadow_db;
}

double pathloss_mmw_db(double distance_m, double shadow_db,
                       const RadioConfig& cfg) {
  if (!(distance_m > 0.0)) throw std::invalid_argument("singular distance");
  return cfg.beta2_db + 10.0 * cfg.alpha2 * std::log10(distance_m) + shadow_db;
}

double rb_rate(double bandwidth_hz, double power_w, double gain,
               double fading_power, double pathloss_db, double n0_dbm_hz) {
  double noise_w = dbm_to_watts(n0_dbm_hz) * bandwidth_hz;
  double snr = power_w * gain * fading_power * db_to_linear(-pathloss_db) /
               noise_w;
  return bandwidth_hz * std::log2(1.0 + snr);
}

double draw_rayleigh_power(Rng& rng) {
  return std::exponential_distribution<double>(1.0)(rng);
}

double draw_rician_power(double k, Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  double theta = phase(rng);
  double los = std::sqrt(k / (k + 1.0));
  double sigma = std::sqrt(1.0 / (2.0 * (k + 1.0)));
  double re = los * std::cos(theta) + sigma * n01(rng);
  double im = los * std::sin(theta) + sigma * n01(rng);
  return re * re + im * im;
}

UwChannelState draw_uw_channel(int num_ues, int k1, Rng& fading) {
  UwChannelState ch;
  ch.gains.assign(num_ues, std::vector<double>(k1));
  for (auto& row : ch.gains) {
    for (double& g : row) g = draw_rayleigh_power(fading);
  }
  return ch;
}

MmwChannelState draw_mmw_channel(std::span<const UserEquipment> ues, int k2,
                                 double rician_k, Rng& fading, Rng& blockage) {
  MmwChannelState ch;
  ch.gains.assign(ues.size(), std::vector<double>(k2));
  ch.los.resize(ues.size());
  for (std::size_t i = 0; i < ues.size(); ++i) {
    for (double& h : ch.gains[i]) h = draw_rician_power(rician_k, fading);
    ch.los[i] = std::bernoulli_distribution(ues[i].rho)(blockage);
  }
  return ch;
}

double rate_uw(const UserEquipment& ue, int rb, const UwChannelState& ch,
               const RadioConfig& cfg) {
  double pl = pathloss_uw_db(distance_to_bs(ue.position), ue.shadow_uw_db, cfg);
  return rb_rate(cfg.w1_hz, dbm_to_watts(cfg.p1_dbm) / cfg.k1, 1.0,
                 ch.gains.at(ue.id).at(rb), pl, cfg.n0_dbm_hz);
}

double planning_rate_mmw(const UserEquipment& ue, const MmwChannelState& ch,
                         const RadioConfig& cfg) {
  double pl =
      pathloss_mmw_db(distance_to_bs(ue.position), ue.shadow_mmw_db, cfg);
  double w2 = cfg.w2_hz();
  double p = dbm_to_watts(cfg.p2_dbm) / cfg.k2;
  double psi = db_to_linear(cfg.psi_dbi);
  double total = 0.0;
  for (double h : ch.gains.at(ue.id)) {
    total += rb_rate(w2, p, psi, h, pl, cfg.n0_dbm_hz);
  }
  return total;
}

double rate_mmw(const UserEquipment& ue, const MmwChannelState& ch,
                const RadioConfig& cfg) {
  if (!ch.los.at(ue.id)) return 0.0;
  return planning_rate_mmw(ue, ch, cfg);
}

}  // namespace dualband
