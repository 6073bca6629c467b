#pragma once

#include "gaitxai/dataset.hpp"
#include "gaitxai/network.hpp"
#include "gaitxai/params.hpp"

#include <array>
#include <span>
#include <vector>

namespace gaitxai {

/// Annotated legs as classifier samples, in dataset order (patients, then left before right).
struct AnnotatedSamples {
    std::vector<LabeledSample> samples;
    std::vector<LegKey> legs;
};

AnnotatedSamples annotated_samples(const Dataset& ds);

/// counts[truth][predicted]
struct ConfusionMatrix {
    std::array<std::array<std::size_t, kNumClasses>, kNumClasses> counts{};

    std::size_t total() const;
    double accuracy() const;
};

struct ClassificationReport {
    ConfusionMatrix confusion;
    std::vector<std::size_t> indices;       // evaluated samples
    std::vector<GaitClass> predictions;     // parallel to indices
};

ClassificationReport classify(const ModelParams& params, std::span<const LabeledSample> samples,
                              std::span<const std::size_t> indices);

/// Flat feature-vector positions covered by the motif windows planted for `cls`.
std::vector<bool> motif_mask(GaitClass cls);

struct LocalizationScore {
    double inside = 0.0;   // mean relevance over motif positions
    double outside = 0.0;  // mean relevance over all other positions
    bool localized() const { return inside > outside; }
};

LocalizationScore localization_score(std::span<const double> relevance, GaitClass cls);

inline constexpr std::size_t kDecilePoints = kFeatureLength / 10;  // 141

struct PerturbationScore {
    double baseline = 0.0;  // target-class probability of the unmodified input
    double top = 0.0;       // after replacing the most relevant decile
    double bottom = 0.0;    // after replacing the least relevant decile
    bool faithful() const { return baseline - top > baseline - bottom; }
};

/// Replaces the top and bottom deciles of `relevance` (stable order, ties by position) with the
/// corresponding values of `reference` and re-evaluates the target-class probability.
PerturbationScore perturbation_score(const ModelParams& params, std::span<const double> x,
                                     std::span<const double> relevance, std::span<const double> reference,
                                     GaitClass target);

/// Mean training feature vector over the samples whose label differs from `target`.
std::vector<double> reference_input(std::span<const LabeledSample> samples, std::span<const std::size_t> trainIndices,
                                    GaitClass target);

struct ExplanationReport {
    std::array<std::size_t, kNumClasses> correct{};    // correctly classified held-out legs per class
    std::array<std::size_t, kNumClasses> localized{};  // of those, motif inside > outside
    std::size_t faithful = 0;                          // of all correct legs, top-decile drop > bottom
    std::size_t totalCorrect = 0;

    double localization_rate(GaitClass cls) const;
    double fidelity_rate() const;
};

/// Grad-CAM on the true class of every correctly classified sample in `evalIndices`.
ExplanationReport explanation_metrics(const ModelParams& params, std::span<const LabeledSample> samples,
                                      std::span<const std::size_t> trainIndices,
                                      std::span<const std::size_t> evalIndices);

}  // namespace gaitxai
