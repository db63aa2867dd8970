#pragma once

#include <string_view>
#include <variant>

#include "byzsgd/filters.hpp"
#include "byzsgd/model.hpp"
#include "byzsgd/rng.hpp"

namespace byzsgd {

// Requester's own parameter plus zero-mean isotropic Gaussian noise with the
// given per-coordinate variance.
struct AddNoise {
  double variance = 0.1;
};

// Fresh vector with i.i.d. Uniform[0, 1] coordinates.
struct RandomUniform {};

// Negation of the attacker's own local parameter.
struct Inverse {};

using AttackKind = std::variant<AddNoise, RandomUniform, Inverse>;

std::string_view attack_name(const AttackKind& attack);

// What a Byzantine worker sends back when `requester_param`'s owner fetches.
ParamVector byzantine_response(const AttackKind& attack, const ParamVector& requester_param,
                               const ParamVector& own_param, Rng& rng);

// Byzantine workers train on their own shard only. Takes no responses: they
// never read other workers' parameters.
ParamVector byzantine_local_update(std::size_t worker_id, const ParamVector& own, const UpdateContext& ctx, Rng& rng);

}  // namespace byzsgd
