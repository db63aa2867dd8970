#include "byzsgd/engine.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <utility>

#include <fmt/format.h>

#include "byzsgd/adversary.hpp"
#include "byzsgd/clock.hpp"
#include "byzsgd/errors.hpp"

namespace byzsgd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct PreparedProblem {
  LossModel model;
  std::shared_ptr<const Dataset> train;
  ShardAssignment shards;
  std::optional<ParamVector> optimum;
};

PreparedProblem prepare(const ExperimentConfig& config, const Datasets& datasets) {
  if (config.problem == ProblemKind::kQuadratic) {
    auto generated = gen_quadratic(config.n, config.m, config.dimension, config.spread, config.seed);
    auto train = std::make_shared<const Dataset>(std::move(generated.centers));
    return PreparedProblem{LossModel::quadratic(config.dimension), std::move(train), std::move(generated.shards),
                           std::move(generated.optimum)};
  }
  if (!datasets.train || !datasets.test) throw ConfigError("MNIST run needs training and test sets");
  if (datasets.train->num_classes < 2) throw ConfigError("training set has no class count");
  if (datasets.test->feature_dim() != datasets.train->feature_dim()) {
    throw ConfigError("training and test feature dimensions differ");
  }
  auto model = LossModel::softmax(datasets.train->feature_dim(), static_cast<std::size_t>(datasets.train->num_classes));
  auto shards = make_shards(datasets.train->size(), config.n, config.m, config.seed);
  return PreparedProblem{model, datasets.train, std::move(shards), std::nullopt};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  return fmt::format("{}", v);
}

}  // namespace

std::string_view role_name(Role role) { return role == Role::kHonest ? "honest" : "byzantine"; }

std::string make_run_id(const ExperimentConfig& config) {
  return fmt::format("{}-{}-{}-n{}-p{}-q{}-m{}-s{}", to_string(config.problem), to_string(config.filter),
                     to_string(config.attack), config.n, config.p_true, config.p_assumed, config.m, config.seed);
}

double evaluate_final(std::span<const WorkerState> workers, const LossModel& model, const Dataset& test_set) {
  double total = 0.0;
  std::size_t honest = 0;
  for (const auto& w : workers) {
    if (w.role != Role::kHonest) continue;
    total += model.predict_accuracy(w.param, test_set);
    ++honest;
  }
  return honest == 0 ? kNaN : total / static_cast<double>(honest);
}

RunResult run_experiment(const ExperimentConfig& config, const Datasets& datasets) {
  config.validate_parameters();
  PreparedProblem problem = prepare(config, datasets);
  const LossModel& model = problem.model;
  const std::size_t n = config.n;
  const std::size_t first_byzantine = n - config.p_true;
  const bool normalize_on = config.normalize_enabled();
  const FilterRule rule = config.filter_rule();
  const AttackKind attack = config.attack_kind();
  const bool exchanges = !std::holds_alternative<NonCollaborative>(rule);

  RunResult result;
  result.train = problem.train;
  result.optimum = problem.optimum;
  auto& workers = result.workers;
  workers.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    WorkerState w;
    w.id = i;
    w.role = i < first_byzantine ? Role::kHonest : Role::kByzantine;
    w.shard = Shard{problem.train.get(), std::move(problem.shards[i])};
    w.rng = make_stream(config.seed, stream::worker(i));
    w.attack_rng = make_stream(config.seed, stream::attack(i));
    std::normal_distribution<double> gauss(0.0, 1.0);
    w.param.resize(static_cast<Eigen::Index>(model.dimension()));
    for (Eigen::Index k = 0; k < w.param.size(); ++k) w.param[k] = gauss(w.rng);
    if (normalize_on) w.param = normalize(w.param);
    workers.push_back(std::move(w));
  }

  // Per-worker distance to the optimum, honest workers only; sums are
  // recomputed from these each tick so they never drift.
  std::vector<double> sq_dist(n, 0.0);
  std::vector<double> dist(n, 0.0);
  auto refresh_distance = [&](std::size_t i) {
    if (!problem.optimum || workers[i].role != Role::kHonest) return;
    sq_dist[i] = (workers[i].param - *problem.optimum).squaredNorm();
    dist[i] = std::sqrt(sq_dist[i]);
  };
  auto sums = [&]() -> std::pair<double, double> {
    if (!problem.optimum) return {kNaN, kNaN};
    double s2 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < first_byzantine; ++i) {
      s2 += sq_dist[i];
      s1 += dist[i];
    }
    return {s2, s1};
  };
  for (std::size_t i = 0; i < n; ++i) refresh_distance(i);

  MetricsLog& log = result.metrics;
  RunSummary& summary = log.summary;
  summary.run_id = make_run_id(config);
  summary.filter = to_string(config.filter);
  summary.attack = to_string(config.attack);
  summary.p_true = config.p_true;
  summary.p_assumed = config.p_assumed;
  summary.seed = config.seed;
  std::tie(summary.initial_sq_dist_sum, summary.initial_dist_sum) = sums();

  const std::uint64_t budget = config.tick_budget();
  log.rows.reserve(budget);
  MasterClock clock(n, config.seed);
  std::vector<Response> responses;
  responses.reserve(n);

  for (std::uint64_t t = 0; t < budget; ++t) {
    const TickEvent event = clock.next_tick();
    WorkerState& actor = workers[event.worker];
    const UpdateContext ctx{model, actor.shard, config.batch_size, config.eta_at(t), t, normalize_on, n};

    TickRow row;
    row.tick = event.tick;
    row.time = event.time;
    row.worker = event.worker;
    row.role = actor.role;

    if (actor.role == Role::kHonest) {
      responses.clear();
      if (exchanges) {
        for (const auto& other : workers) {
          if (other.id == actor.id) continue;
          if (other.role == Role::kHonest) {
            responses.push_back({other.id, other.param});
          } else {
            auto& responder = workers[other.id];
            responses.push_back({other.id, byzantine_response(attack, actor.param, responder.param, responder.attack_rng)});
          }
        }
      }
      UpdateResult update = honest_update(actor.id, actor.param, responses, rule, ctx, actor.rng);
      actor.param = std::move(update.param);
      row.accepted_count = update.record.accepted_count();
      summary.max_grad_sq_norm = std::max(summary.max_grad_sq_norm, update.grad_sq_norm);
      log.records.push_back(std::move(update.record));
    } else {
      actor.param = byzantine_local_update(actor.id, actor.param, ctx, actor.rng);
    }

    refresh_distance(actor.id);
    std::tie(row.sum_sq_dist, row.sum_dist) = sums();
    log.rows.push_back(row);
  }

  summary.mean_honest_accuracy =
      config.problem == ProblemKind::kMnist ? evaluate_final(workers, model, *datasets.test) : kNaN;
  return result;
}

void write_metrics_csv(const MetricsLog& log, std::ostream& out) {
  out << "tick,time,worker,role,accepted_count,sum_sq_dist\n";
  for (const auto& r : log.rows) {
    out << r.tick << ',' << format_double(r.time) << ',' << r.worker << ',' << role_name(r.role) << ','
        << r.accepted_count << ',' << format_double(r.sum_sq_dist) << '\n';
  }
}

void write_summary_csv(std::span<const RunSummary> summaries, std::ostream& out) {
  out << "run_id,filter,attack,p_true,p_assumed,seed,mean_honest_accuracy\n";
  for (const auto& s : summaries) {
    out << s.run_id << ',' << s.filter << ',' << s.attack << ',' << s.p_true << ',' << s.p_assumed << ',' << s.seed
        << ',' << format_double(s.mean_honest_accuracy) << '\n';
  }
}

}  // namespace byzsgd
