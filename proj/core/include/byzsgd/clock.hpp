#pragma once

#include <cstddef>
#include <cstdint>

#include "byzsgd/rng.hpp"

namespace byzsgd {

struct TickEvent {
  std::uint64_t tick = 0;
  double time = 0.0;      // master-clock time
  std::size_t worker = 0;
};

// Master clock of N rate-1 Poisson clocks: exponential(N) gaps, acting worker
// uniform over {0..N-1}. Owns the scheduler stream, so worker-side sampling
// never shifts the tick sequence.
class MasterClock {
 public:
  MasterClock(std::size_t num_workers, std::uint64_t seed);

  TickEvent next_tick();

  std::size_t num_workers() const { return num_workers_; }

 private:
  std::size_t num_workers_;
  Rng rng_;
  std::uint64_t next_index_ = 0;
  double time_ = 0.0;
};

}  // namespace byzsgd
