#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "byzsgd/bounds.hpp"
#include "byzsgd/config.hpp"

namespace byzsgd {

// Quadratic fixture used to check the convergence envelopes empirically:
// d = 10, N = 10, p = 3 (assumed = true), add-noise attack, eta = 0.05,
// normalization off. theorem 1 uses the closest filter, theorem 2 the descent
// filter with a finite delta.
ExperimentConfig theorem_fixture(int theorem);

struct BoundCheckReport {
  int theorem = 1;
  std::size_t seeds = 0;
  double slack = 0.25;
  TheoremBoundParams params;
  std::vector<double> empirical;  // seed-averaged honest sum after tick t
  std::vector<double> bound;      // envelope at t, without slack
  double asymptote = 0.0;         // theorem 1 only
  double plateau = 0.0;           // mean of `empirical` over the last 10% of ticks
  bool contained = false;         // empirical <= bound * (1 + slack) at every t
  bool plateau_ok = true;         // theorem 1: plateau <= asymptote * (1 + slack)
  std::uint64_t worst_tick = 0;
  double worst_ratio = 0.0;       // max over t of empirical / bound

  bool passed() const { return contained && plateau_ok; }
};

// Runs `seeds` replicates (seeds fixture.seed, fixture.seed + 1, ...) of the
// fixture and compares the seed average with the closed-form envelope.
// Theorem 1 sets sigma^2 = d * noise variance and G to the largest honest
// gradient norm seen in any replicate.
BoundCheckReport verify_theorem1(const ExperimentConfig& fixture, std::size_t seeds, double slack = 0.25);
BoundCheckReport verify_theorem2(const ExperimentConfig& fixture, std::size_t seeds, double slack = 0.25);

// First tick from which the delta term is checked for monotone decrease,
// ceil(1 / (1 - r)).
std::uint64_t theorem2_monotone_start(const TheoremBoundParams& params);

struct DeltaTermCheck {
  std::uint64_t start = 0;    // theorem2_monotone_start
  std::uint64_t horizon = 0;  // last tick evaluated
  bool monotone = false;      // strictly decreasing on [start, horizon]
  double start_value = 0.0;
  double end_value = 0.0;
  bool vanishes() const { return monotone && end_value <= 0.01 * start_value; }
};

// Evaluates the delta term alone on [0, horizon_factor * start].
DeltaTermCheck check_delta_term(const TheoremBoundParams& params, std::uint64_t horizon_factor = 1000);

}  // namespace byzsgd
