#include "dualband/core_model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dualband {

double distance_to_bs(Point p) { return std::hypot(p.x, p.y); }

int qos_indicator(const UserApp& ua) {
  if (ua.qos_class < 1) throw std::invalid_argument("qos_class must be >= 1");
  if (static_cast<int>(ua.received_log.size()) < ua.qos_class) {
    throw std::logic_error("deadline not reached");
  }
  double got = std::accumulate(ua.received_log.begin(),
                               ua.received_log.begin() + ua.qos_class, 0.0);
  return got >= ua.total_bits * (1.0 - kBitsRelTol) ? 1 : 0;
}

double credit_bits(double remaining, double deliverable) {
  if (remaining <= 0.0 || deliverable <= 0.0) return 0.0;
  if (deliverable >= remaining * (1.0 - kBitsRelTol)) return remaining;
  return deliverable;
}

void apply_delivery(std::span<UserApp> apps,
                    const std::map<UaId, double>& delivered) {
  for (UserApp& ua : apps) {
    double got = 0.0;
    if (auto it = delivered.find(ua.id); it != delivered.end()) {
      got = credit_bits(ua.remaining_bits, it->second);
    }
    ua.received_log.push_back(got);
    ua.remaining_bits = got >= ua.remaining_bits ? 0.0 : ua.remaining_bits - got;
  }
}

const ContextEntry* ContextInfo::find(UaId ua) const {
  auto it = std::lower_bound(
      entries.begin(), entries.end(), ua,
      [](const ContextEntry& e, UaId id) { return e.ua < id; });
  if (it == entries.end() || it->ua != ua) return nullptr;
  return &*it;
}

const ContextEntry& ContextInfo::at(UaId ua) const {
  const ContextEntry* e = find(ua);
  if (e == nullptr) throw std::out_of_range("UA not in context");
  return *e;
}

std::map<int, std::vector<UaId>> ContextInfo::alive_classes() const {
  std::map<int, std::vector<UaId>> out;
  for (const ContextEntry& e : entries) out[e.deadline].push_back(e.ua);
  return out;
}

std::map<UaId, double> ContextInfo::required_loads() const {
  std::map<UaId, double> out;
  for (const ContextEntry& e : entries) out[e.ua] = e.required_bits;
  return out;
}

std::map<UaId, double> ContextInfo::los_probs() const {
  std::map<UaId, double> out;
  for (const ContextEntry& e : entries) out[e.ua] = e.rho;
  return out;
}

ContextInfo build_context(std::span<const UserApp> apps,
                          std::span<const UserEquipment> ues, int slot,
                          const std::vector<bool>* ue_prefers_mmw) {
  if (slot < 1) throw std::invalid_argument("slot must be >= 1");
  ContextInfo ctx;
  ctx.slot = slot;
  for (const UserApp& ua : apps) {
    if (ua.qos_class < slot || ua.remaining_bits <= 0.0) continue;
    if (ua.ue < 0 || ua.ue >= static_cast<int>(ues.size())) {
      throw std::out_of_range("UA refers to unknown UE");
    }
    ContextEntry e;
    e.ua = ua.id;
    e.ue = ua.ue;
    e.deadline = ua.qos_class;
    e.required_bits = ua.remaining_bits;
    e.rho = ues[ua.ue].rho;
    e.los_preferred =
        ue_prefers_mmw == nullptr ? true : bool((*ue_prefers_mmw).at(ua.ue));
    ctx.entries.push_back(e);
  }
  std::sort(ctx.entries.begin(), ctx.entries.end(),
            [](const ContextEntry& a, const ContextEntry& b) {
              return a.ua < b.ua;
            });
  return ctx;
}

std::vector<int> SlotDecision::rbs_of(UaId ua) const {
  std::vector<int> out;
  for (int k = 0; k < static_cast<int>(rb_owner.size()); ++k) {
    if (rb_owner[k] == ua) out.push_back(k);
  }
  return out;
}

std::vector<std::string> check_slot_decision(const SlotDecision& d, int k1,
                                             double tau, double tau_prime) {
  std::vector<std::string> bad;
  auto say = [&bad](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    bad.push_back(os.str());
  };
  if (static_cast<int>(d.rb_owner.size()) != k1) {
    say("rb_owner has ", d.rb_owner.size(), " entries, expected ", k1);
  }
  for (int k = 0; k < static_cast<int>(d.rb_owner.size()); ++k) {
    UaId a = d.rb_owner[k];
    if (a != kNoUa && !d.g1.contains(a)) {
      say("RB ", k, " owned by UA ", a, " outside G1");
    }
  }
  for (UaId a : d.g1) {
    if (d.g2.contains(a)) say("UA ", a, " on both bands");
  }
  double airtime = 0.0;
  for (const auto& [a, t] : d.tau) {
    if (t < 0.0) say("negative airtime for UA ", a);
    if (t > 0.0 && !d.g2.contains(a)) say("airtime for UA ", a, " outside G2");
    airtime += t;
  }
  double budget = tau - static_cast<double>(d.g2.size()) * tau_prime;
  if (airtime > budget + kTimeTol) {
    say("airtime ", airtime, " exceeds budget ", budget);
  }
  return bad;
}

}  // namespace dualband
