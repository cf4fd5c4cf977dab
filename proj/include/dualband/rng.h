#pragma once

#include <cstdint>
#include <random>

namespace dualband {

using Rng = std::mt19937_64;

// Independent random streams of one drop. Keeping concerns apart means that,
// for example, changing the scheduler never perturbs channel draws.
enum class Stream : std::uint64_t {
  kPlacement = 1,
  kShadowing,
  kTraffic,
  kFading,
  kBlockage,
  kLearning,
};

std::uint64_t splitmix64(std::uint64_t x);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t drop, Stream s);

inline Rng make_rng(std::uint64_t base, std::uint64_t drop, Stream s) {
  return Rng(derive_seed(base, drop, s));
}

}  // namespace dualband
