#include "gaitxai/adam.hpp"

#include "gaitxai/errors.hpp"

#include <cmath>

namespace gaitxai {

AdamState AdamState::for_params(const ModelParams& params) {
    AdamState s;
    s.firstMoment = ModelParams::zeros(params.config);
    s.secondMoment = ModelParams::zeros(params.config);
    return s;
}

void adam_update(std::span<double> weights, std::span<const double> grads, std::span<double> m, std::span<double> v,
                 std::size_t step, const TrainConfig& cfg) {
    if (grads.size() != weights.size() || m.size() != weights.size() || v.size() != weights.size())
        throw InvalidInput("adam: tensor shape mismatch");
    if (step == 0) throw InvalidInput("adam: step index is 1-based");
    const double b1 = cfg.adamBeta1;
    const double b2 = cfg.adamBeta2;
    const double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
    const double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double g = grads[i];
        m[i] = b1 * m[i] + (1.0 - b1) * g;
        v[i] = b2 * v[i] + (1.0 - b2) * g * g;
        const double mHat = m[i] / c1;
        const double vHat = v[i] / c2;
        weights[i] -= cfg.learningRate * mHat / (std::sqrt(vHat) + cfg.adamEpsilon);
    }
}

void adam_step(ModelParams& params, const ModelParams& grads, AdamState& state, const TrainConfig& cfg) {
    auto w = params.tensor_views();
    const auto g = grads.tensor_views();
    auto m = state.firstMoment.tensor_views();
    auto v = state.secondMoment.tensor_views();
    if (g.size() != w.size() || m.size() != w.size() || v.size() != w.size())
        throw InvalidInput("adam: parameter structure mismatch");
    ++state.step;
    for (std::size_t t = 0; t < w.size(); ++t) adam_update(w[t], g[t], m[t], v[t], state.step, cfg);
}

}  // namespace gaitxai
