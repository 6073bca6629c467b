#pragma once

#include "gaitxai/channels.hpp"
#include "gaitxai/features.hpp"
#include "gaitxai/layers.hpp"
#include "gaitxai/params.hpp"
#include "gaitxai/patient.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace gaitxai {

/// Every intermediate of one forward pass.
struct ForwardCache {
    MapStack input;                       // 1 x inputLength
    std::vector<MapStack> convPre;        // per conv layer, before SELU
    std::vector<MapStack> convAct;        // per conv layer, after SELU
    std::vector<std::uint8_t> flatKeep;   // dropout mask before fc1 (all ones at inference)
    std::vector<double> fc1Input;         // flattened last-conv activations after dropout
    std::vector<double> fc1Pre;
    std::vector<double> fc1Act;
    std::vector<std::uint8_t> fc1Keep;    // dropout mask before the output layer
    std::vector<double> outInput;
    std::vector<double> logits;
    std::vector<double> probabilities;

    const MapStack& last_conv() const { return convAct.back(); }
};

struct LabeledSample {
    std::vector<double> x;
    GaitClass label;
};

std::vector<double> softmax(std::span<const double> logits);

/// conv x N (SELU) -> flatten -> [alpha dropout] -> fc1 (SELU) -> [alpha dropout] -> logits -> softmax.
/// Dropout masks are drawn from `rng` only when `training` is set.
ForwardCache forward(const ModelParams& params, std::span<const double> x, bool training, std::mt19937_64& rng);
/// Inference-mode forward; no randomness involved.
ForwardCache forward(const ModelParams& params, std::span<const double> x);

struct LossAndGradients {
    double loss = 0.0;
    ModelParams grads;
    std::size_t correct = 0;  // argmax hits of the (possibly dropout-perturbed) forward passes
};

/// Mean categorical cross-entropy over the batch and its exact gradient. One pair of dropout
/// masks is drawn per batch item, in batch order. With `training == false` dropout is off.
LossAndGradients loss_and_gradients(const ModelParams& params, std::span<const LabeledSample> batch,
                                    std::mt19937_64& rng, bool training = true);

/// Loss only, with the same mask semantics as loss_and_gradients.
double batch_loss(const ModelParams& params, std::span<const LabeledSample> batch, std::mt19937_64& rng,
                  bool training = true);

/// d logit[targetClass] / d (last conv activations), inference mode, shaped like the last conv layer.
MapStack logit_gradient_wrt_last_conv(const ModelParams& params, const ForwardCache& cache, std::size_t targetClass);

/// Logit of `targetClass` computed from given last-conv activations (inference mode).
double logit_from_last_conv(const ModelParams& params, const MapStack& lastConv, std::size_t targetClass);

/// Argmax of inference probabilities; ties go to the lowest class index.
Prediction predict(const ModelParams& params, std::span<const double> x);
Prediction predict(const ModelParams& params, const FeatureVector& x);

}  // namespace gaitxai
