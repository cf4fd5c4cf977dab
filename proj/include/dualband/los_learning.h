#pragma once

#include <array>

#include "dualband/rng.h"

namespace dualband {

enum class LinkState { kMmwLos = 0, kMmwBlocked = 1, kMicrowave = 2 };
enum class Decision { kStay = 0, kSwitch = 1 };

// r(S1) = r1, r(S2) = -r2, r(S3) = r3 with r1 > r3 > 0 and r2 > 0.
struct Rewards {
  double r1 = 3.0;
  double r2 = 16.0;
  double r3 = 1.0;

  double of(LinkState s) const;
  bool operator==(const Rewards&) const = default;
};

// LoS probability above which staying on mmW pays off on average.
// Throws std::invalid_argument("invalid rewards").
double rho_threshold(const Rewards& r);

enum class StepSize { kConstant, kVisitCount };

struct LearningConfig {
  Rewards rewards;
  StepSize step_size = StepSize::kVisitCount;
  double alpha = 0.1;  // used with kConstant
  double gamma = 0.0;
  double epsilon_min = 0.05;
  double exploration_scale = 25.0;  // state visits per epsilon halving^2
  int warmup_steps = 2000;

  void validate() const;
  bool operator==(const LearningConfig&) const = default;
};

struct QTable {
  std::array<std::array<double, 2>, 3> q{};
  std::array<std::array<long, 2>, 3> visits{};
  LinkState current = LinkState::kMicrowave;

  double at(LinkState s, Decision d) const {
    return q[static_cast<int>(s)][static_cast<int>(d)];
  }
  long count(LinkState s, Decision d) const {
    return visits[static_cast<int>(s)][static_cast<int>(d)];
  }
  long count(LinkState s) const {
    return count(s, Decision::kStay) + count(s, Decision::kSwitch);
  }
};

LinkState transition(LinkState s, Decision d, bool los);

// One tabular update of Q(s, d) towards r(next) + gamma * max Q(next, .).
// `alpha` overrides the configured step when non-negative.
QTable q_update(QTable t, LinkState s, Decision d, LinkState next,
                const LearningConfig& cfg, double alpha = -1.0);

// True when the table says: stay on LoS mmW, stay after a blockage, and move
// from microwave to mmW.
bool classify(const QTable& t);

// Epsilon-greedy agent over the three-state link model. Exploration decays
// with the visits of the current state; an exploratory move takes the less
// tried decision.
class LosLearner {
 public:
  explicit LosLearner(LearningConfig cfg) : cfg_(cfg) {}

  Decision choose(Rng& rng) const;
  // Records that `d` was taken from the current state and `next` followed.
  void observe(Decision d, LinkState next);
  // Interacts with a link whose LoS probability is `rho` for `steps` steps.
  void train(double rho, int steps, Rng& rng);

  const QTable& table() const { return table_; }
  bool prefers_mmw() const { return classify(table_); }

 private:
  LearningConfig cfg_;
  QTable table_;
};

}  // namespace dualband
