#include "byzsgd/config.hpp"

#include <cmath>

#include "byzsgd/errors.hpp"

namespace byzsgd {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& why) {
  throw ConfigError("invalid " + field + ": " + why);
}

}  // namespace

std::uint64_t ExperimentConfig::tick_budget() const {
  if (ticks) return *ticks;
  const std::uint64_t batches_per_epoch = (m + batch_size - 1) / batch_size;
  return static_cast<std::uint64_t>(n) * batches_per_epoch;
}

double ExperimentConfig::eta_at(std::uint64_t tick) const {
  return eta_schedule == EtaSchedule::kConstant ? eta : eta / (static_cast<double>(tick) + 1.0);
}

FilterRule ExperimentConfig::filter_rule() const {
  switch (filter) {
    case FilterKind::kAlg1: return ClosestFilter{p_assumed};
    case FilterKind::kAlg2: return DescentFilter{delta};
    case FilterKind::kKrum: return KrumFilter{p_assumed};
    case FilterKind::kNonCollab: return NonCollaborative{};
  }
  return NonCollaborative{};
}

AttackKind ExperimentConfig::attack_kind() const {
  switch (attack) {
    case AttackType::kAddNoise: return AddNoise{noise_variance};
    case AttackType::kRandom: return RandomUniform{};
    case AttackType::kInverse: return Inverse{};
  }
  return Inverse{};
}

void ExperimentConfig::validate() const {
  validate_parameters();
  if (problem == ProblemKind::kMnist && data_dir.empty()) {
    invalid("data-dir", "MNIST runs need a dataset directory (flag or BYZSGD_DATA_DIR)");
  }
}

void ExperimentConfig::validate_parameters() const {
  if (n == 0) invalid("n", "must be >= 1");
  if (p_true > n - 1) invalid("p-true", "must be <= n - 1");
  if (p_assumed > n - 1) invalid("p-assumed", "must be <= n - 1");
  if (m == 0) invalid("m", "must be >= 1");
  if (batch_size == 0) invalid("batch-size", "must be >= 1");
  if (!(eta > 0.0) || !std::isfinite(eta)) invalid("eta", "must be finite and > 0");
  if (!(delta > 0.0)) invalid("delta", "must be > 0 or inf");
  if (!(noise_variance >= 0.0) || !std::isfinite(noise_variance)) invalid("noise-variance", "must be finite and >= 0");
  if (filter == FilterKind::kKrum && n < p_assumed + 3) invalid("p-assumed", "krum requires n - p-assumed - 2 >= 1");
  if (replicates == 0) invalid("replicates", "must be >= 1");
  if (ticks && *ticks == 0) invalid("ticks", "must be >= 1 or \"epoch\"");
  if (problem == ProblemKind::kQuadratic) {
    if (dimension == 0) invalid("dimension", "must be >= 1");
    if (!(spread >= 0.0) || !std::isfinite(spread)) invalid("spread", "must be finite and >= 0");
  }
}

std::string to_string(ProblemKind kind) { return kind == ProblemKind::kMnist ? "mnist" : "quadratic"; }

std::string to_string(EtaSchedule schedule) {
  return schedule == EtaSchedule::kConstant ? "constant" : "inverse-t";
}

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::kAlg1: return "alg1";
    case FilterKind::kAlg2: return "alg2";
    case FilterKind::kKrum: return "krum";
    case FilterKind::kNonCollab: return "noncollab";
  }
  return "alg1";
}

std::string to_string(AttackType type) {
  switch (type) {
    case AttackType::kAddNoise: return "add-noise";
    case AttackType::kRandom: return "random";
    case AttackType::kInverse: return "inverse";
  }
  return "add-noise";
}

ProblemKind parse_problem(const std::string& name) {
  if (name == "mnist") return ProblemKind::kMnist;
  if (name == "quadratic") return ProblemKind::kQuadratic;
  invalid("problem", "unknown value '" + name + "' (mnist|quadratic)");
}

EtaSchedule parse_eta_schedule(const std::string& name) {
  if (name == "constant") return EtaSchedule::kConstant;
  if (name == "inverse-t" || name == "1/t") return EtaSchedule::kInverseT;
  invalid("eta-schedule", "unknown value '" + name + "' (constant|inverse-t)");
}

FilterKind parse_filter(const std::string& name) {
  if (name == "alg1") return FilterKind::kAlg1;
  if (name == "alg2") return FilterKind::kAlg2;
  if (name == "krum") return FilterKind::kKrum;
  if (name == "noncollab" || name == "non-collaborative") return FilterKind::kNonCollab;
  invalid("filter", "unknown value '" + name + "' (alg1|alg2|krum|noncollab)");
}

AttackType parse_attack(const std::string& name) {
  if (name == "add-noise") return AttackType::kAddNoise;
  if (name == "random") return AttackType::kRandom;
  if (name == "inverse") return AttackType::kInverse;
  invalid("attack", "unknown value '" + name + "' (add-noise|random|inverse)");
}

}  // namespace byzsgd
