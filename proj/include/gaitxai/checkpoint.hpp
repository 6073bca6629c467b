#pragma once

#include "gaitxai/model_config.hpp"
#include "gaitxai/params.hpp"
#include "gaitxai/trainer.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace gaitxai {

/// Everything needed to reproduce or reuse a training run.
///
/// File layout (all integers u64 little-endian, reals IEEE-754 binary64 little-endian bit patterns):
///   magic "GXAICKPT", format version (=1)
///   ModelConfig: convLayers featureMaps filterSize stride fcWidth numClasses inputLength, dropoutRate(f64)
///   TrainConfig: learningRate beta1 beta2 epsilon (f64), batchSize epochs seed, validationFraction (f64)
///   history: count, then per epoch: epoch, trainLoss trainAcc valLoss valAcc (f64)
///   split: count + indices (train), count + indices (validation)
///   tensors: count, then per tensor: name length, name bytes, value count, values (f64)
struct Checkpoint {
    ModelParams params;
    TrainConfig trainConfig;
    std::vector<EpochStats> history;
    DataSplit split;

    bool operator==(const Checkpoint&) const = default;
};

inline constexpr std::uint64_t kCheckpointVersion = 1;

std::vector<std::uint8_t> encode_checkpoint(const Checkpoint& ckpt);
/// Throws FormatError on any structural problem (bad magic, version, truncation, shape mismatch).
Checkpoint decode_checkpoint(const std::vector<std::uint8_t>& bytes);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace gaitxai
