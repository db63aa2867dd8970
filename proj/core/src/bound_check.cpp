#include "byzsgd/bound_check.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "byzsgd/engine.hpp"
#include "byzsgd/errors.hpp"

namespace byzsgd {

namespace {

struct SeedAverages {
  std::vector<double> sq;    // sum of squared distances
  std::vector<double> lin;   // sum of distances
  double initial_sq = 0.0;
  double initial_lin = 0.0;
  double max_grad_sq = 0.0;
};

SeedAverages run_seeds(const ExperimentConfig& fixture, std::size_t seeds) {
  if (seeds == 0) throw ConfigError("bound check needs at least one seed");
  if (fixture.problem != ProblemKind::kQuadratic) throw ConfigError("bound check needs the quadratic problem");
  if (fixture.normalize_enabled()) throw ConfigError("bound check needs normalization off");
  if (fixture.eta_schedule != EtaSchedule::kConstant) throw ConfigError("bound check needs a constant step size");

  const std::size_t ticks = fixture.tick_budget();
  SeedAverages avg;
  avg.sq.assign(ticks, 0.0);
  avg.lin.assign(ticks, 0.0);
  for (std::size_t s = 0; s < seeds; ++s) {
    ExperimentConfig config = fixture;
    config.seed = fixture.seed + s;
    const RunResult run = run_experiment(config);
    const auto& rows = run.metrics.rows;
    for (std::size_t t = 0; t < ticks; ++t) {
      avg.sq[t] += rows[t].sum_sq_dist;
      avg.lin[t] += rows[t].sum_dist;
    }
    avg.initial_sq += run.metrics.summary.initial_sq_dist_sum;
    avg.initial_lin += run.metrics.summary.initial_dist_sum;
    avg.max_grad_sq = std::max(avg.max_grad_sq, run.metrics.summary.max_grad_sq_norm);
  }
  const double inv = 1.0 / static_cast<double>(seeds);
  for (auto& v : avg.sq) v *= inv;
  for (auto& v : avg.lin) v *= inv;
  avg.initial_sq *= inv;
  avg.initial_lin *= inv;
  return avg;
}

TheoremBoundParams base_params(const ExperimentConfig& fixture) {
  TheoremBoundParams p;
  p.eta = fixture.eta;
  p.lambda = 1.0;
  p.smoothness = 1.0;
  p.num_workers = fixture.n;
  p.num_byzantine = fixture.p_true;
  return p;
}

void compare(BoundCheckReport& report) {
  report.contained = true;
  report.worst_ratio = 0.0;
  for (std::size_t t = 0; t < report.empirical.size(); ++t) {
    const double ratio = report.empirical[t] / report.bound[t];
    if (ratio > report.worst_ratio) {
      report.worst_ratio = ratio;
      report.worst_tick = t;
    }
    if (!(report.empirical[t] <= report.bound[t] * (1.0 + report.slack))) report.contained = false;
  }
  const std::size_t tail = std::max<std::size_t>(1, report.empirical.size() / 10);
  double sum = 0.0;
  for (std::size_t t = report.empirical.size() - tail; t < report.empirical.size(); ++t) sum += report.empirical[t];
  report.plateau = sum / static_cast<double>(tail);
}

}  // namespace

ExperimentConfig theorem_fixture(int theorem) {
  ExperimentConfig c;
  c.problem = ProblemKind::kQuadratic;
  c.dimension = 10;
  c.spread = 0.5;
  c.n = 10;
  c.p_true = 3;
  c.p_assumed = 3;
  c.m = 1000;
  c.batch_size = 32;
  c.eta = 0.05;
  c.attack = AttackType::kAddNoise;
  c.noise_variance = 0.1;
  c.normalize = false;
  c.seed = 1;
  if (theorem == 1) {
    c.filter = FilterKind::kAlg1;
    c.ticks = 2000;
  } else if (theorem == 2) {
    c.filter = FilterKind::kAlg2;
    c.delta = 100.0;
    c.ticks = 4000;
  } else {
    throw ConfigError("theorem must be 1 or 2");
  }
  return c;
}

BoundCheckReport verify_theorem1(const ExperimentConfig& fixture, std::size_t seeds, double slack) {
  if (fixture.filter != FilterKind::kAlg1) throw ConfigError("theorem 1 check needs filter alg1");
  if (fixture.attack != AttackType::kAddNoise) throw ConfigError("theorem 1 check needs the add-noise attack");
  const SeedAverages avg = run_seeds(fixture, seeds);

  BoundCheckReport report;
  report.theorem = 1;
  report.seeds = seeds;
  report.slack = slack;
  report.params = base_params(fixture);
  report.params.sigma = std::sqrt(static_cast<double>(fixture.dimension) * fixture.noise_variance);
  report.params.grad_bound = std::sqrt(avg.max_grad_sq);
  report.params.initial_sq_dist_sum = avg.initial_sq;
  report.params.initial_dist_sum = avg.initial_lin;
  report.asymptote = theorem1_asymptote(report.params);
  report.empirical = avg.sq;
  report.bound.resize(avg.sq.size());
  for (std::size_t t = 0; t < report.bound.size(); ++t) report.bound[t] = theorem1_bound(report.params, t);
  compare(report);
  report.plateau_ok = report.plateau <= report.asymptote * (1.0 + slack);
  return report;
}

BoundCheckReport verify_theorem2(const ExperimentConfig& fixture, std::size_t seeds, double slack) {
  if (fixture.filter != FilterKind::kAlg2) throw ConfigError("theorem 2 check needs filter alg2");
  if (!std::isfinite(fixture.delta)) throw ConfigError("theorem 2 check needs a finite delta");
  const SeedAverages avg = run_seeds(fixture, seeds);

  BoundCheckReport report;
  report.theorem = 2;
  report.seeds = seeds;
  report.slack = slack;
  report.params = base_params(fixture);
  report.params.delta = fixture.delta;
  report.params.initial_sq_dist_sum = avg.initial_sq;
  report.params.initial_dist_sum = avg.initial_lin;
  report.empirical = avg.lin;
  report.bound = theorem2_bound_series(report.params, avg.lin.size());
  compare(report);
  return report;
}

std::uint64_t theorem2_monotone_start(const TheoremBoundParams& params) {
  return static_cast<std::uint64_t>(std::ceil(1.0 / (1.0 - theorem2_ratio(params))));
}

DeltaTermCheck check_delta_term(const TheoremBoundParams& params, std::uint64_t horizon_factor) {
  TheoremBoundParams only_delta = params;
  only_delta.initial_dist_sum = 0.0;
  DeltaTermCheck check;
  check.start = theorem2_monotone_start(params);
  check.horizon = check.start * std::max<std::uint64_t>(horizon_factor, 2);
  const auto series = theorem2_bound_series(only_delta, check.horizon + 1);
  check.monotone = true;
  for (std::uint64_t t = check.start + 1; t <= check.horizon; ++t) {
    if (!(series[t] < series[t - 1])) {
      check.monotone = false;
      break;
    }
  }
  check.start_value = series[check.start];
  check.end_value = series[check.horizon];
  return check;
}

}  // namespace byzsgd
