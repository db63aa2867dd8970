#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "byzsgd/config.hpp"
#include "byzsgd/data.hpp"
#include "byzsgd/filters.hpp"
#include "byzsgd/model.hpp"
#include "byzsgd/rng.hpp"

namespace byzsgd {

enum class Role { kHonest, kByzantine };

std::string_view role_name(Role role);

struct WorkerState {
  std::size_t id = 0;
  Role role = Role::kHonest;
  Shard shard;
  ParamVector param;
  Rng rng;         // batch sampling and initialization
  Rng attack_rng;  // Byzantine responses only
};

// One row per master tick.
struct TickRow {
  std::uint64_t tick = 0;
  double time = 0.0;
  std::size_t worker = 0;
  Role role = Role::kHonest;
  std::size_t accepted_count = 0;
  double sum_sq_dist = 0.0;  // sum over honest ||w - w*||^2 after the tick; NaN without a known optimum
  double sum_dist = 0.0;     // sum over honest ||w - w*||; not serialized
};

struct RunSummary {
  std::string run_id;
  std::string filter;
  std::string attack;
  std::size_t p_true = 0;
  std::size_t p_assumed = 0;
  std::uint64_t seed = 0;
  double mean_honest_accuracy = 0.0;  // NaN for quadratic runs
  double initial_sq_dist_sum = 0.0;   // NaN for MNIST runs
  double initial_dist_sum = 0.0;
  double max_grad_sq_norm = 0.0;      // over honest update steps
};

struct MetricsLog {
  std::vector<TickRow> rows;
  std::vector<AcceptanceRecord> records;  // honest ticks only
  RunSummary summary;
};

// Immutable inputs for MNIST runs. Shared by concurrent replicates.
struct Datasets {
  std::shared_ptr<const Dataset> train;
  std::shared_ptr<const Dataset> test;
};

struct RunResult {
  MetricsLog metrics;
  std::vector<WorkerState> workers;
  std::shared_ptr<const Dataset> train;  // keeps worker shards valid
  std::optional<ParamVector> optimum;
};

std::string make_run_id(const ExperimentConfig& config);

// Workers with the p_true highest ids are Byzantine. Deterministic in config.
RunResult run_experiment(const ExperimentConfig& config, const Datasets& datasets = {});

// Mean test accuracy over honest workers.
double evaluate_final(std::span<const WorkerState> workers, const LossModel& model, const Dataset& test_set);

// CSV: tick,time,worker,role,accepted_count,sum_sq_dist
void write_metrics_csv(const MetricsLog& log, std::ostream& out);
// CSV: run_id,filter,attack,p_true,p_assumed,seed,mean_honest_accuracy
void write_summary_csv(std::span<const RunSummary> summaries, std::ostream& out);

}  // namespace byzsgd
