#pragma once

#include "gaitxai/dataset.hpp"
#include "gaitxai/group_stats.hpp"
#include "gaitxai/model_config.hpp"
#include "gaitxai/params.hpp"
#include "gaitxai/relevance.hpp"
#include "gaitxai/trainer.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace gaitxai {

struct PipelineOptions {
    TrainConfig train;
    ModelConfig model;
    /// Skips training when set (e.g. a loaded checkpoint).
    std::optional<ModelParams> pretrained;
    EpochCallback onEpoch;
};

/// Everything the service exposes, computed once per pipeline run.
struct ServedState {
    /// Patients carry `predicted` for every leg and `confirmed` (latest override, else annotation).
    Dataset dataset;
    std::map<LegKey, RelevanceMap> relevance;  // Grad-CAM for the predicted class of each leg
    std::map<GaitClass, GroupStats> groupStats;  // classes without any labeled leg are absent
    std::optional<ModelParams> params;          // empty for an empty cohort
    std::vector<EpochStats> history;
    DataSplit split;  // indices into annotated_samples(dataset)

    bool operator==(const ServedState&) const = default;
};

/// Builds features, trains (or uses `opts.pretrained`), predicts and explains every leg and
/// computes group stats. An empty patient list yields an empty state without training.
ServedState run_pipeline(const Dataset& ds, const PipelineOptions& opts);

/// Group stats for all four classes over the effective labels (annotation, overridden by `log`).
std::map<GaitClass, GroupStats> cohort_group_stats(const Dataset& ds, const std::vector<ClassificationOverride>& log);

/// Confirmed class per leg: latest entry of `log`, else the annotation.
std::map<LegKey, std::optional<GaitClass>> confirmed_classes(const Dataset& ds,
                                                             const std::vector<ClassificationOverride>& log);

/// FNV-1a over model parameters, predictions, relevance, confirmed classes and group stats.
std::uint64_t snapshot_hash(const ServedState& state);

}  // namespace gaitxai
