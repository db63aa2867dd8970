#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace byzsgd {

// Constants of the closed-form convergence envelopes for the honest workers.
struct TheoremBoundParams {
  double eta = 0.0;
  double lambda = 1.0;    // strong convexity
  double smoothness = 1.0;  // gradient Lipschitz constant L
  double grad_bound = 0.0;  // G, with ||grad||^2 <= G^2
  double sigma = 0.0;       // sigma, with E||eps||^2 <= sigma^2
  double delta = 0.0;
  std::size_t num_workers = 1;
  std::size_t num_byzantine = 0;
  double initial_sq_dist_sum = 0.0;  // sum over honest of ||w_0 - w*||^2
  double initial_dist_sum = 0.0;     // sum over honest of ||w_0 - w*||
};

// Known-p filter, squared distances:
//   (1 - 2 eta lambda / (N - p))^t * S0 + ((1 - 2 eta lambda) sigma^2 + eta^2 G^2) / (2 eta lambda)
double theorem1_bound(const TheoremBoundParams& params, std::uint64_t t);
double theorem1_asymptote(const TheoremBoundParams& params);

// Unknown-p filter, distances:
//   r^t * S0 + (1 - eta lambda L / (lambda + L)) * delta / (N - p) * sum_{k=0..t} r^(t-k) / (k + 1)
// with r = 1 - eta lambda L / ((N - p)(lambda + L)).
double theorem2_bound(const TheoremBoundParams& params, std::uint64_t t);
double theorem2_ratio(const TheoremBoundParams& params);
// The delta-dependent second term alone.
double theorem2_delta_term(const TheoremBoundParams& params, std::uint64_t t);
// theorem2_bound for t = 0..count-1 in O(count) via the partial-sum recurrence.
std::vector<double> theorem2_bound_series(const TheoremBoundParams& params, std::size_t count);

}  // namespace byzsgd
