#pragma once

#include "gaitxai/model_config.hpp"
#include "gaitxai/params.hpp"

#include <span>

namespace gaitxai {

/// First/second moment estimates shaped like the parameters, plus the step counter.
struct AdamState {
    ModelParams firstMoment;
    ModelParams secondMoment;
    std::size_t step = 0;

    static AdamState for_params(const ModelParams& params);
};

/// Bias-corrected Adam update of one tensor; `step` is 1-based.
void adam_update(std::span<double> weights, std::span<const double> grads, std::span<double> m, std::span<double> v,
                 std::size_t step, const TrainConfig& cfg);

/// Increments `state.step` and updates every tensor.
void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state, const TrainConfig& cfg);

}  // namespace gaitxai
