#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace gaitxai {

/// CNN hyperparameters. The defaults are the production architecture; tests shrink them.
struct ModelConfig {
    std::size_t convLayers = 4;
    std::size_t featureMaps = 64;
    std::size_t filterSize = 3;
    std::size_t stride = 2;
    std::size_t fcWidth = 512;
    std::size_t numClasses = 4;
    double dropoutRate = 0.05;
    std::size_t inputLength = 1414;

    /// Output length of every conv layer under valid padding, e.g. {706, 352, 175, 87}.
    std::vector<std::size_t> conv_lengths() const;
    std::size_t last_conv_length() const;
    std::size_t flatten_length() const;
    /// Throws InvalidInput if any layer would become empty or a field is zero.
    void validate() const;

    bool operator==(const ModelConfig&) const = default;
};

std::size_t conv_output_length(std::size_t inputLength, std::size_t filterSize, std::size_t stride);

struct TrainConfig {
    double learningRate = 1e-3;
    double adamBeta1 = 0.9;
    double adamBeta2 = 0.999;
    double adamEpsilon = 1e-8;
    std::size_t batchSize = 16;
    std::size_t epochs = 100;
    std::uint64_t seed = 0;
    double validationFraction = 0.2;

    void validate() const;
    bool operator==(const TrainConfig&) const = default;
};

}  // namespace gaitxai
