#pragma once

#include <cstdint>
#include <random>

namespace dismax {

// Reproducibility contract: every random draw in the system comes from a Substream
// addressed by (master seed, trial, agent, round, phase). The derivation below and
// the bit-level uniform01 are part of the external interface; changing either breaks
// replay of recorded results.

enum class Phase : std::uint32_t {
  kInstance = 1,  // per-trial problem geometry
  kSample = 2,    // gradient sample sets, one stream per (agent, round)
  kPipage = 3,    // per-agent rounding
  kAux = 4,       // everything else (diagnostic roundings etc.)
};

// splitmix64 output function; the standard finalizer, used here as a mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Fold one component into a seed chain.
inline std::uint64_t mix_in(std::uint64_t h, std::uint64_t part) {
  return mix64(h ^ (part + 0x9E3779B97F4A7C15ull));
}

inline std::uint64_t derive_trial_seed(std::uint64_t master, std::uint32_t trial) {
  return mix_in(mix_in(master, 0x545249414Cull /* "TRIAL" */), trial);
}

// mt19937_64 is bit-exact across conforming implementations; std distributions are
// not, so uniforms are produced directly from engine output.
class Substream {
 public:
  explicit Substream(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  // 53-bit uniform in [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return uniform01() < p; }

  std::uint64_t seed() const { return seed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

inline Substream make_substream(std::uint64_t trial_seed, std::uint32_t agent,
                                std::uint32_t round, Phase phase) {
  std::uint64_t h = trial_seed;
  h = mix_in(h, agent);
  h = mix_in(h, round);
  h = mix_in(h, static_cast<std::uint64_t>(phase));
  return Substream(h);
}

}  // namespace dismax
