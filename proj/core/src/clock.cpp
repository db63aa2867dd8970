#include "byzsgd/clock.hpp"

#include <random>

#include "byzsgd/errors.hpp"

namespace byzsgd {

MasterClock::MasterClock(std::size_t num_workers, std::uint64_t seed)
    : num_workers_(num_workers), rng_(make_stream(seed, stream::kScheduler)) {
  if (num_workers_ == 0) throw ConfigError("clock needs at least one worker");
}

TickEvent MasterClock::next_tick() {
  std::exponential_distribution<double> gap(static_cast<double>(num_workers_));
  std::uniform_int_distribution<std::size_t> pick(0, num_workers_ - 1);
  double dt = gap(rng_);
  while (dt <= 0.0) dt = gap(rng_);
  time_ += dt;
  return TickEvent{next_index_++, time_, pick(rng_)};
}

}  // namespace byzsgd
