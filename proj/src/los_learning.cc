#include "dualband/los_learning.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dualband {

double Rewards::of(LinkState s) const {
  switch (s) {
    case LinkState::kMmwLos:
      return r1;
    case LinkState::kMmwBlocked:
      return -r2;
    case LinkState::kMicrowave:
      return r3;
  }
  return 0.0;
}

double rho_threshold(const Rewards& r) {
  if (!(r.r2 > 0.0 && r.r3 > 0.0 && r.r1 > r.r3)) {
    throw std::invalid_argument("invalid rewards");
  }
  return (r.r3 + r.r2) / (r.r1 + r.r2);
}

void LearningConfig::validate() const {
  rho_threshold(rewards);
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("learning.alpha must be in (0, 1]");
  }
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("learning.gamma must be in [0, 1)");
  }
  if (!(epsilon_min >= 0.0 && epsilon_min <= 1.0)) {
    throw std::invalid_argument("learning.epsilon_min must be in [0, 1]");
  }
  if (!(exploration_scale > 0.0)) {
    throw std::invalid_argument("learning.exploration_scale must be > 0");
  }
  if (warmup_steps < 0) {
    throw std::invalid_argument("learning.warmup_steps must be >= 0");
  }
}

LinkState transition(LinkState s, Decision d, bool los) {
  bool on_mmw = s != LinkState::kMicrowave;
  bool stay = d == Decision::kStay;
  if (on_mmw != stay) return LinkState::kMicrowave;
  return los ? LinkState::kMmwLos : LinkState::kMmwBlocked;
}

QTable q_update(QTable t, LinkState s, Decision d, LinkState next,
                const LearningConfig& cfg, double alpha) {
  int i = static_cast<int>(s);
  int j = static_cast<int>(d);
  long n = ++t.visits[i][j];
  if (alpha < 0.0) {
    alpha = cfg.step_size == StepSize::kVisitCount ? 1.0 / n : cfg.alpha;
  }
  const auto& row = t.q[static_cast<int>(next)];
  double target =
      cfg.rewards.of(next) + cfg.gamma * std::max(row[0], row[1]);
  t.q[i][j] = (1.0 - alpha) * t.q[i][j] + alpha * target;
  return t;
}

bool classify(const QTable& t) {
  using enum LinkState;
  using enum Decision;
  return t.at(kMmwLos, kStay) >= t.at(kMmwLos, kSwitch) &&
         t.at(kMmwBlocked, kStay) >= t.at(kMmwBlocked, kSwitch) &&
         t.at(kMicrowave, kSwitch) >= t.at(kMicrowave, kStay);
}

Decision LosLearner::choose(Rng& rng) const {
  LinkState s = table_.current;
  double n = static_cast<double>(table_.count(s));
  double eps = std::max(cfg_.epsilon_min,
                        1.0 / std::sqrt(1.0 + n / cfg_.exploration_scale));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < eps) {
    long stay = table_.count(s, Decision::kStay);
    long sw = table_.count(s, Decision::kSwitch);
    if (stay != sw) return stay < sw ? Decision::kStay : Decision::kSwitch;
    return u(rng) < 0.5 ? Decision::kStay : Decision::kSwitch;
  }
  return table_.at(s, Decision::kStay) >= table_.at(s, Decision::kSwitch)
             ? Decision::kStay
             : Decision::kSwitch;
}

void LosLearner::observe(Decision d, LinkState next) {
  table_ = q_update(table_, table_.current, d, next, cfg_);
  table_.current = next;
}

void LosLearner::train(double rho, int steps, Rng& rng) {
  std::bernoulli_distribution los(rho);
  for (int i = 0; i < steps; ++i) {
    Decision d = choose(rng);
    observe(d, transition(table_.current, d, los(rng)));
  }
}

}  // namespace dualband
