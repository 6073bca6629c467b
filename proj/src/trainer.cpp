#include "gaitxai/trainer.hpp"

#include "gaitxai/adam.hpp"
#include "gaitxai/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gaitxai {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

enum SeedStream : std::uint64_t { kInitStream = 1, kSplitStream = 2, kShuffleStream = 3, kDropoutStream = 4 };

// Fisher-Yates with explicit uniform draws; std::shuffle's draw pattern is library-specific.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

DataSplit stratified_split(std::span<const LabeledSample> data, double validationFraction, std::uint64_t seed) {
    if (!(validationFraction > 0.0 && validationFraction < 1.0))
        throw InvalidInput("validation fraction must lie in (0,1)");
    std::vector<std::vector<std::size_t>> byClass(kNumClasses);
    for (std::size_t i = 0; i < data.size(); ++i) byClass.at(index_of(data[i].label)).push_back(i);
    std::mt19937_64 rng(seed);
    DataSplit split;
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        auto& idx = byClass[k];
        if (idx.empty()) continue;
        if (idx.size() < 2)
            throw InvalidInput("class " + std::string(to_string(gait_class_from_index(k))) +
                               " needs at least 2 samples");
        seeded_shuffle(idx, rng);
        const auto n = idx.size();
        auto nVal = static_cast<std::size_t>(std::llround(validationFraction * static_cast<double>(n)));
        nVal = std::clamp<std::size_t>(nVal, 1, n - 1);
        split.validation.insert(split.validation.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(nVal));
        split.train.insert(split.train.end(), idx.begin() + static_cast<std::ptrdiff_t>(nVal), idx.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.validation.begin(), split.validation.end());
    return split;
}

EvalStats evaluate(const ModelParams& params, std::span<const LabeledSample> dataset,
                   std::span<const std::size_t> indices) {
    EvalStats s;
    if (indices.empty()) return s;
    std::size_t hits = 0;
    for (std::size_t i : indices) {
        const auto cache = forward(params, dataset[i].x);
        const std::size_t label = index_of(dataset[i].label);
        s.loss += -std::log(std::max(cache.probabilities[label], 1e-300));
        const auto best = static_cast<std::size_t>(
            std::max_element(cache.probabilities.begin(), cache.probabilities.end()) - cache.probabilities.begin());
        if (best == label) ++hits;
    }
    const auto n = static_cast<double>(indices.size());
    s.loss /= n;
    s.accuracy = static_cast<double>(hits) / n;
    return s;
}

TrainResult train(std::span<const LabeledSample> dataset, const TrainConfig& cfg, const ModelConfig& modelCfg,
                  const EpochCallback& onEpoch) {
    cfg.validate();
    modelCfg.validate();
    std::array<std::size_t, kNumClasses> counts{};
    for (const auto& s : dataset) {
        if (s.x.size() != modelCfg.inputLength) throw InvalidInput("training sample has the wrong length");
        ++counts.at(index_of(s.label));
    }
    for (std::size_t k = 0; k < kNumClasses; ++k) {
        if (counts[k] < 2)
            throw InvalidInput("class " + std::string(to_string(gait_class_from_index(k))) +
                               " has fewer than 2 samples");
    }

    TrainResult result;
    result.split = stratified_split(dataset, cfg.validationFraction, derive_seed(cfg.seed, kSplitStream));
    result.params = ModelParams::lecun_normal(modelCfg, derive_seed(cfg.seed, kInitStream));
    auto adam = AdamState::for_params(result.params);
    std::mt19937_64 shuffleRng(derive_seed(cfg.seed, kShuffleStream));
    std::mt19937_64 dropoutRng(derive_seed(cfg.seed, kDropoutStream));

    auto order = result.split.train;
    std::vector<LabeledSample> batch;
    for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
        seeded_shuffle(order, shuffleRng);
        double lossSum = 0.0;
        std::size_t hits = 0;
        for (std::size_t start = 0; start < order.size(); start += cfg.batchSize) {
            const std::size_t end = std::min(order.size(), start + cfg.batchSize);
            batch.clear();
            for (std::size_t i = start; i < end; ++i) batch.push_back(dataset[order[i]]);
            auto lg = loss_and_gradients(result.params, batch, dropoutRng, true);
            lossSum += lg.loss * static_cast<double>(batch.size());
            hits += lg.correct;
            adam_step(result.params, lg.grads, adam, cfg);
        }
        EpochStats stats;
        stats.epoch = epoch;
        stats.trainLoss = order.empty() ? 0.0 : lossSum / static_cast<double>(order.size());
        stats.trainAccuracy = order.empty() ? 0.0 : static_cast<double>(hits) / static_cast<double>(order.size());
        const auto valEval = evaluate(result.params, dataset, result.split.validation);
        stats.validationLoss = valEval.loss;
        stats.validationAccuracy = valEval.accuracy;
        if (!result.params.all_finite()) throw InvalidModel("training diverged: non-finite parameters");
        result.history.push_back(stats);
        if (onEpoch) onEpoch(stats);
    }
    return result;
}

}  // namespace gaitxai
