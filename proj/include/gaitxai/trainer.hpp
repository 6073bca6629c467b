#pragma once

#include "gaitxai/model_config.hpp"
#include "gaitxai/network.hpp"
#include "gaitxai/params.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace gaitxai {

struct EpochStats {
    std::size_t epoch = 0;  // 1-based
    double trainLoss = 0.0;      // mean mini-batch loss (training mode)
    double trainAccuracy = 0.0;  // argmax hits during the training-mode passes
    double validationLoss = 0.0;
    double validationAccuracy = 0.0;

    bool operator==(const EpochStats&) const = default;
};

struct DataSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;

    bool operator==(const DataSplit&) const = default;
};

/// Independent deterministic sub-seed derived from a master seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Per-class shuffled split; each class contributes round(fraction * n), clamped to [1, n-1], to validation.
/// Index lists are sorted ascending. Throws InvalidInput if a class has fewer than 2 samples.
DataSplit stratified_split(std::span<const LabeledSample> data, double validationFraction, std::uint64_t seed);

struct TrainResult {
    ModelParams params;
    std::vector<EpochStats> history;
    DataSplit split;
};

using EpochCallback = std::function<void(const EpochStats&)>;

/// Trains from LeCun-normal initialization with Adam on the mean cross-entropy.
/// Initialization, split, shuffling and dropout masks are all derived from `cfg.seed`.
TrainResult train(std::span<const LabeledSample> dataset, const TrainConfig& cfg,
                  const ModelConfig& modelCfg = ModelConfig{}, const EpochCallback& onEpoch = {});

struct EvalStats {
    double loss = 0.0;
    double accuracy = 0.0;
};

/// Inference-mode mean loss and accuracy over the selected samples.
EvalStats evaluate(const ModelParams& params, std::span<const LabeledSample> dataset,
                   std::span<const std::size_t> indices);

}  // namespace gaitxai
