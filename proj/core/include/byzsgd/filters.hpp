#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "byzsgd/model.hpp"
#include "byzsgd/rng.hpp"

namespace byzsgd {

// Accept the N - p - 1 shared parameters closest to the worker's own
// (known upper bound p on the number of Byzantine workers).
struct ClosestFilter {
  std::size_t p_assumed = 0;
};

// Accept a shared parameter when it lies within delta / (t + 1) of the
// worker's own and the batch gradient at it points away from the worker's own
// parameter. Needs no knowledge of p; delta may be infinite.
struct DescentFilter {
  double delta = std::numeric_limits<double>::infinity();
};

// Krum baseline: keep only the minimum-score parameter among own + shared.
struct KrumFilter {
  std::size_t p_assumed = 0;
};

// Plain local SGD, nothing is fetched.
struct NonCollaborative {};

using FilterRule = std::variant<ClosestFilter, DescentFilter, KrumFilter, NonCollaborative>;

std::string_view filter_name(const FilterRule& rule);

// A parameter received from worker `id` in reply to a fetch.
struct Response {
  std::size_t id = 0;
  ParamVector param;
};

enum class Decision { kAccepted, kDistanceRank, kThresholdFail, kDescentFail };

std::string_view decision_name(Decision decision);

struct ResponderDecision {
  std::size_t id = 0;
  Decision decision = Decision::kAccepted;
};

struct AcceptanceRecord {
  std::uint64_t tick = 0;
  std::size_t requester = 0;
  std::vector<ResponderDecision> decisions;

  std::size_t accepted_count() const;
};

// Ids of the max(0, N - p - 1) responses nearest to `own` in Euclidean
// distance, ordered by (distance, id). Fewer if fewer responses exist.
std::vector<std::size_t> filter_closest(const ParamVector& own, std::span<const Response> shared,
                                        std::size_t num_workers, std::size_t p_assumed);

struct DescentVerdict {
  bool accepted = false;
  Decision reason = Decision::kAccepted;
};

// Distance test ||own - candidate|| <= delta / (t + 1) and descent test
// <grad_at_candidate, own - candidate> >= 0. Both must hold.
DescentVerdict filter_descent(const ParamVector& own, const ParamVector& candidate,
                              const ParamVector& grad_at_candidate, std::uint64_t tick, double delta);

enum class DivisorMode {
  kFixedWorkersMinusP,  // divide by N - p regardless of how many were accepted
  kAcceptedPlusOne,     // divide by |accepted| + 1
};

// (own + sum(accepted)) / divisor. `workers_minus_p` is only read in fixed mode.
ParamVector aggregate_average(const ParamVector& own, std::span<const ParamVector* const> accepted,
                              DivisorMode mode, std::size_t workers_minus_p = 0);
ParamVector aggregate_average(const ParamVector& own, std::span<const ParamVector> accepted, DivisorMode mode,
                              std::size_t workers_minus_p = 0);

ParamVector sgd_step(const ParamVector& w_half, const ParamVector& grad, double eta);

// Projects onto the unit sphere. A zero vector is returned unchanged with a
// logged warning.
ParamVector normalize(const ParamVector& w);

// Krum score of each candidate is the sum of squared distances to its
// N - p - 2 nearest other candidates; returns the id with the lowest score
// (lowest id on ties). Throws ConfigError when N - p - 2 < 1.
std::size_t krum_select(std::span<const Response> candidates, std::size_t num_workers, std::size_t p_assumed);

// Everything a worker needs to take one local step.
struct UpdateContext {
  const LossModel& model;
  const Shard& shard;
  std::size_t batch_size = 32;
  double eta = 0.01;
  std::uint64_t tick = 0;
  bool normalize = false;
  std::size_t num_workers = 1;
};

struct UpdateResult {
  ParamVector param;
  AcceptanceRecord record;
  double grad_sq_norm = 0.0;  // squared norm of the gradient used in the step
};

// Sample a batch, step from `own`, optionally normalize. No exchange.
UpdateResult local_sgd_update(std::size_t worker_id, const ParamVector& own, const UpdateContext& ctx, Rng& rng);

// One honest tick: sample the batch, filter `responses` under `rule`,
// aggregate, take the gradient step at the aggregate, optionally normalize.
UpdateResult honest_update(std::size_t worker_id, const ParamVector& own, std::span<const Response> responses,
                           const FilterRule& rule, const UpdateContext& ctx, Rng& rng);

}  // namespace byzsgd
