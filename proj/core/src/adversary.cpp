#include "byzsgd/adversary.hpp"

#include <cmath>

#include "byzsgd/errors.hpp"

namespace byzsgd {

std::string_view attack_name(const AttackKind& attack) {
  if (std::holds_alternative<AddNoise>(attack)) return "add-noise";
  if (std::holds_alternative<RandomUniform>(attack)) return "random";
  return "inverse";
}

ParamVector byzantine_response(const AttackKind& attack, const ParamVector& requester_param,
                               const ParamVector& own_param, Rng& rng) {
  if (const auto* noise = std::get_if<AddNoise>(&attack)) {
    if (!(noise->variance >= 0.0)) throw ConfigError("noise variance must be >= 0");
    if (noise->variance == 0.0) return requester_param;
    std::normal_distribution<double> gauss(0.0, std::sqrt(noise->variance));
    ParamVector out = requester_param;
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] += gauss(rng);
    return out;
  }
  if (std::holds_alternative<RandomUniform>(attack)) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    ParamVector out(requester_param.size());
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = unit(rng);
    return out;
  }
  return -own_param;
}

ParamVector byzantine_local_update(std::size_t worker_id, const ParamVector& own, const UpdateContext& ctx, Rng& rng) {
  return local_sgd_update(worker_id, own, ctx, rng).param;
}

}  // namespace byzsgd
