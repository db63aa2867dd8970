#include "byzsgd/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include <spdlog/spdlog.h>

#include "byzsgd/errors.hpp"

namespace byzsgd {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

ParamVector step_and_project(const ParamVector& w_half, const GatheredBatch& batch, const UpdateContext& ctx,
                             double& grad_sq_norm) {
  const ParamVector grad = ctx.model.gradient(w_half, batch);
  grad_sq_norm = grad.squaredNorm();
  ParamVector next = sgd_step(w_half, grad, ctx.eta);
  return ctx.normalize ? normalize(next) : next;
}

}  // namespace

std::string_view filter_name(const FilterRule& rule) {
  return std::visit(Overloaded{
                        [](const ClosestFilter&) { return std::string_view{"alg1"}; },
                        [](const DescentFilter&) { return std::string_view{"alg2"}; },
                        [](const KrumFilter&) { return std::string_view{"krum"}; },
                        [](const NonCollaborative&) { return std::string_view{"noncollab"}; },
                    },
                    rule);
}

std::string_view decision_name(Decision decision) {
  switch (decision) {
    case Decision::kAccepted: return "accepted";
    case Decision::kDistanceRank: return "distance-rank";
    case Decision::kThresholdFail: return "threshold-fail";
    case Decision::kDescentFail: return "descent-fail";
  }
  return "unknown";
}

std::size_t AcceptanceRecord::accepted_count() const {
  return static_cast<std::size_t>(std::count_if(decisions.begin(), decisions.end(), [](const ResponderDecision& d) {
    return d.decision == Decision::kAccepted;
  }));
}

std::vector<std::size_t> filter_closest(const ParamVector& own, std::span<const Response> shared,
                                        std::size_t num_workers, std::size_t p_assumed) {
  const std::size_t slots = num_workers > p_assumed + 1 ? num_workers - p_assumed - 1 : 0;
  const std::size_t keep = std::min(slots, shared.size());

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(shared.size());
  for (const auto& r : shared) ranked.emplace_back((own - r.param).squaredNorm(), r.id);
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end());

  std::vector<std::size_t> ids(keep);
  std::transform(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ids.begin(),
                 [](const auto& entry) { return entry.second; });
  return ids;
}

DescentVerdict filter_descent(const ParamVector& own, const ParamVector& candidate,
                              const ParamVector& grad_at_candidate, std::uint64_t tick, double delta) {
  const double radius = delta / (static_cast<double>(tick) + 1.0);
  if (!((own - candidate).norm() <= radius)) return {false, Decision::kThresholdFail};
  if (!(grad_at_candidate.dot(own - candidate) >= 0.0)) return {false, Decision::kDescentFail};
  return {true, Decision::kAccepted};
}

ParamVector aggregate_average(const ParamVector& own, std::span<const ParamVector* const> accepted,
                              DivisorMode mode, std::size_t workers_minus_p) {
  const std::size_t divisor = mode == DivisorMode::kFixedWorkersMinusP ? workers_minus_p : accepted.size() + 1;
  if (divisor == 0) throw ConfigError("average divisor must be >= 1");
  ParamVector sum = own;
  for (const ParamVector* p : accepted) sum += *p;
  return sum / static_cast<double>(divisor);
}

ParamVector aggregate_average(const ParamVector& own, std::span<const ParamVector> accepted, DivisorMode mode,
                              std::size_t workers_minus_p) {
  std::vector<const ParamVector*> ptrs;
  ptrs.reserve(accepted.size());
  for (const auto& p : accepted) ptrs.push_back(&p);
  return aggregate_average(own, std::span<const ParamVector* const>(ptrs), mode, workers_minus_p);
}

ParamVector sgd_step(const ParamVector& w_half, const ParamVector& grad, double eta) {
  if (!(eta > 0.0)) throw ConfigError("learning rate must be > 0");
  return w_half - eta * grad;
}

ParamVector normalize(const ParamVector& w) {
  const double norm = w.norm();
  if (norm == 0.0) {
    spdlog::warn("normalize: zero parameter vector left unchanged");
    return w;
  }
  return w / norm;
}

std::size_t krum_select(std::span<const Response> candidates, std::size_t num_workers, std::size_t p_assumed) {
  if (num_workers < p_assumed + 3) {
    throw ConfigError("krum needs N - p - 2 >= 1 (N=" + std::to_string(num_workers) +
                      ", p=" + std::to_string(p_assumed) + ")");
  }
  const std::size_t neighbours = num_workers - p_assumed - 2;
  const std::size_t n = candidates.size();
  if (n < neighbours + 1) throw ConfigError("krum needs at least N - p - 1 candidates");

  std::vector<double> sq(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = (candidates[i].param - candidates[j].param).squaredNorm();
      sq[i * n + j] = d;
      sq[j * n + i] = d;
    }
  }

  std::size_t best = 0;
  double best_score = std::numeric_limits<double>::infinity();
  std::vector<double> row;
  for (std::size_t i = 0; i < n; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) row.push_back(sq[i * n + j]);
    }
    std::nth_element(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(neighbours - 1), row.end());
    std::sort(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(neighbours));
    const double score = std::accumulate(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(neighbours), 0.0);
    const std::size_t id = candidates[i].id;
    if (score < best_score || (score == best_score && id < candidates[best].id)) {
      best = i;
      best_score = score;
    }
  }
  return candidates[best].id;
}

UpdateResult local_sgd_update(std::size_t worker_id, const ParamVector& own, const UpdateContext& ctx, Rng& rng) {
  const MiniBatch batch = sample_minibatch(ctx.shard.size(), ctx.batch_size, rng);
  const GatheredBatch gathered = ctx.model.gather(batch, ctx.shard);
  UpdateResult result;
  result.record.tick = ctx.tick;
  result.record.requester = worker_id;
  result.param = step_and_project(own, gathered, ctx, result.grad_sq_norm);
  return result;
}

UpdateResult honest_update(std::size_t worker_id, const ParamVector& own, std::span<const Response> responses,
                           const FilterRule& rule, const UpdateContext& ctx, Rng& rng) {
  if (std::holds_alternative<NonCollaborative>(rule)) return local_sgd_update(worker_id, own, ctx, rng);

  // One batch per tick: it drives both the descent test and the step.
  const MiniBatch batch = sample_minibatch(ctx.shard.size(), ctx.batch_size, rng);
  const GatheredBatch gathered = ctx.model.gather(batch, ctx.shard);

  UpdateResult result;
  result.record.tick = ctx.tick;
  result.record.requester = worker_id;
  auto& decisions = result.record.decisions;
  decisions.reserve(responses.size());

  ParamVector w_half;
  if (const auto* closest = std::get_if<ClosestFilter>(&rule)) {
    const auto ids = filter_closest(own, responses, ctx.num_workers, closest->p_assumed);
    std::vector<const ParamVector*> accepted;
    for (const auto& r : responses) {
      const bool keep = std::find(ids.begin(), ids.end(), r.id) != ids.end();
      decisions.push_back({r.id, keep ? Decision::kAccepted : Decision::kDistanceRank});
      if (keep) accepted.push_back(&r.param);
    }
    const std::size_t divisor = ctx.num_workers - std::min(closest->p_assumed, ctx.num_workers - 1);
    w_half = aggregate_average(own, accepted, DivisorMode::kFixedWorkersMinusP, divisor);
  } else if (const auto* descent = std::get_if<DescentFilter>(&rule)) {
    std::vector<const ParamVector*> accepted;
    const double radius = descent->delta / (static_cast<double>(ctx.tick) + 1.0);
    for (const auto& r : responses) {
      DescentVerdict verdict{false, Decision::kThresholdFail};
      // Skip the gradient when the distance test already rejects.
      if ((own - r.param).norm() <= radius) {
        verdict = filter_descent(own, r.param, ctx.model.gradient(r.param, gathered), ctx.tick, descent->delta);
      }
      decisions.push_back({r.id, verdict.reason});
      if (verdict.accepted) accepted.push_back(&r.param);
    }
    w_half = aggregate_average(own, accepted, DivisorMode::kAcceptedPlusOne);
  } else {
    const auto& krum = std::get<KrumFilter>(rule);
    std::vector<Response> pool;
    pool.reserve(responses.size() + 1);
    pool.push_back({worker_id, own});
    pool.insert(pool.end(), responses.begin(), responses.end());
    const std::size_t chosen = krum_select(pool, ctx.num_workers, krum.p_assumed);
    for (const auto& r : responses) {
      decisions.push_back({r.id, r.id == chosen ? Decision::kAccepted : Decision::kDistanceRank});
    }
    w_half = chosen == worker_id ? own : std::find_if(responses.begin(), responses.end(), [&](const Response& r) {
                                           return r.id == chosen;
                                         })->param;
  }

  result.param = step_and_project(w_half, gathered, ctx, result.grad_sq_norm);
  return result;
}

}  // namespace byzsgd
