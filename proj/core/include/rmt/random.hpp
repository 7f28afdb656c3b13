#pragma once

#include <cstdint>
#include <random>

namespace rmt {

// Stream seeding contract: substream k of master seed s is the mt19937_64
// engine seeded with splitmix64(s + (k+1) * 0x9E3779B97F4A7C15).  The
// golden-ratio increment plus the splitmix64 finalizer decorrelates nearby
// (seed, stream) pairs; identical inputs give identical streams on every
// platform because mt19937_64 generation is fully specified.
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t stream_index);

class RandomStream {
 public:
  explicit RandomStream(std::uint64_t master_seed, std::uint64_t stream_index = 0)
      : engine_(derive_stream_seed(master_seed, stream_index)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on the open interval (0,1): (u53 + 0.5) / 2^53.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via the Marsaglia polar method (spare discarded so the
  // draw sequence is a pure function of engine state).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace rmt
