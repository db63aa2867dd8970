#include "byzsgd/bounds.hpp"

#include <cmath>
#include <string>

#include "byzsgd/errors.hpp"

namespace byzsgd {

namespace {

double honest_count(const TheoremBoundParams& p) {
  if (p.num_byzantine >= p.num_workers) throw ConfigError("bound needs at least one honest worker (p < N)");
  return static_cast<double>(p.num_workers - p.num_byzantine);
}

void check_theorem1(const TheoremBoundParams& p) {
  if (!(p.eta > 0.0) || !(p.lambda > 0.0)) throw ConfigError("theorem 1 bound needs eta > 0 and lambda > 0");
  const double rate = 1.0 - 2.0 * p.eta * p.lambda / honest_count(p);
  if (!(rate > 0.0 && rate < 1.0)) {
    throw ConfigError("theorem 1 bound needs 1 - 2 eta lambda / (N - p) in (0, 1), got " + std::to_string(rate));
  }
}

void check_theorem2(const TheoremBoundParams& p) {
  if (!(p.eta > 0.0) || !(p.lambda > 0.0) || !(p.smoothness > 0.0)) {
    throw ConfigError("theorem 2 bound needs eta, lambda, L > 0");
  }
  if (p.eta > 2.0 / (p.lambda + p.smoothness)) throw ConfigError("theorem 2 bound needs eta <= 2 / (lambda + L)");
  if (!(p.delta >= 0.0)) throw ConfigError("theorem 2 bound needs delta >= 0");
  honest_count(p);
}

double delta_coefficient(const TheoremBoundParams& p) {
  const double contraction = p.eta * p.lambda * p.smoothness / (p.lambda + p.smoothness);
  return (1.0 - contraction) * p.delta / honest_count(p);
}

}  // namespace

double theorem1_asymptote(const TheoremBoundParams& p) {
  check_theorem1(p);
  const double two_eta_lambda = 2.0 * p.eta * p.lambda;
  return ((1.0 - two_eta_lambda) * p.sigma * p.sigma + p.eta * p.eta * p.grad_bound * p.grad_bound) /
         two_eta_lambda;
}

double theorem1_bound(const TheoremBoundParams& p, std::uint64_t t) {
  check_theorem1(p);
  const double rate = 1.0 - 2.0 * p.eta * p.lambda / honest_count(p);
  return std::pow(rate, static_cast<double>(t)) * p.initial_sq_dist_sum + theorem1_asymptote(p);
}

double theorem2_ratio(const TheoremBoundParams& p) {
  check_theorem2(p);
  return 1.0 - p.eta * p.lambda * p.smoothness / (honest_count(p) * (p.lambda + p.smoothness));
}

double theorem2_delta_term(const TheoremBoundParams& p, std::uint64_t t) {
  const double r = theorem2_ratio(p);
  double sum = 0.0;
  for (std::uint64_t k = 0; k <= t; ++k) {
    sum += std::pow(r, static_cast<double>(t - k)) / (static_cast<double>(k) + 1.0);
  }
  return delta_coefficient(p) * sum;
}

double theorem2_bound(const TheoremBoundParams& p, std::uint64_t t) {
  const double r = theorem2_ratio(p);
  return std::pow(r, static_cast<double>(t)) * p.initial_dist_sum + theorem2_delta_term(p, t);
}

std::vector<double> theorem2_bound_series(const TheoremBoundParams& p, std::size_t count) {
  const double r = theorem2_ratio(p);
  const double coeff = delta_coefficient(p);
  std::vector<double> out(count);
  double partial = 0.0;  // sum_{k<=t} r^(t-k) / (k+1)
  for (std::size_t t = 0; t < count; ++t) {
    partial = r * partial + 1.0 / (static_cast<double>(t) + 1.0);
    out[t] = std::pow(r, static_cast<double>(t)) * p.initial_dist_sum + coeff * partial;
  }
  return out;
}

}  // namespace byzsgd
