#pragma once

#include <cstdint>
#include <random>

namespace byzsgd {

using Rng = std::mt19937_64;

// Stream ids. Every consumer of randomness in a run owns exactly one stream,
// so changing how one consumer draws never perturbs another.
namespace stream {
inline constexpr std::uint64_t kScheduler = 1;
inline constexpr std::uint64_t kSharding = 2;
inline constexpr std::uint64_t kProblem = 3;
inline constexpr std::uint64_t kWorkerBase = 1'000;
inline constexpr std::uint64_t kAttackBase = 1'000'000;

constexpr std::uint64_t worker(std::uint64_t id) { return kWorkerBase + id; }
constexpr std::uint64_t attack(std::uint64_t id) { return kAttackBase + id; }
}  // namespace stream

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Deterministic generator for (master seed, stream id).
Rng make_stream(std::uint64_t seed, std::uint64_t stream_id);

}  // namespace byzsgd
