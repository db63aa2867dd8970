#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "byzsgd/adversary.hpp"
#include "byzsgd/filters.hpp"

namespace byzsgd {

enum class ProblemKind { kMnist, kQuadratic };
enum class EtaSchedule { kConstant, kInverseT };
enum class FilterKind { kAlg1, kAlg2, kKrum, kNonCollab };
enum class AttackType { kAddNoise, kRandom, kInverse };

struct ExperimentConfig {
  ProblemKind problem = ProblemKind::kMnist;
  std::size_t n = 50;
  std::size_t p_true = 0;
  std::size_t p_assumed = 0;
  std::size_t m = 600;
  std::size_t batch_size = 32;
  double eta = 0.01;
  EtaSchedule eta_schedule = EtaSchedule::kConstant;
  double delta = std::numeric_limits<double>::infinity();
  FilterKind filter = FilterKind::kAlg1;
  AttackType attack = AttackType::kAddNoise;
  double noise_variance = 0.1;
  std::optional<bool> normalize;   // unset: on for MNIST, off for quadratic
  std::optional<std::uint64_t> ticks;  // unset: one expected epoch, N * ceil(M / b)
  std::uint64_t seed = 1;
  std::size_t replicates = 1;
  std::string output_dir = "byzsgd-out";
  std::string data_dir;            // MNIST directory
  std::size_t dimension = 10;      // quadratic only
  double spread = 1.0;             // quadratic only

  bool normalize_enabled() const { return normalize.value_or(problem == ProblemKind::kMnist); }
  std::uint64_t tick_budget() const;
  double eta_at(std::uint64_t tick) const;
  FilterRule filter_rule() const;
  AttackKind attack_kind() const;

  // Throws ConfigError naming the offending field.
  void validate() const;
  // Same checks minus the dataset location, for in-memory runs.
  void validate_parameters() const;

  bool operator==(const ExperimentConfig&) const = default;
};

std::string to_string(ProblemKind kind);
std::string to_string(EtaSchedule schedule);
std::string to_string(FilterKind kind);
std::string to_string(AttackType type);

// Inverse of to_string; throws ConfigError on unknown names.
ProblemKind parse_problem(const std::string& name);
EtaSchedule parse_eta_schedule(const std::string& name);
FilterKind parse_filter(const std::string& name);
AttackType parse_attack(const std::string& name);

}  // namespace byzsgd
