#pragma once

#include "gaitxai/channels.hpp"
#include "gaitxai/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace gaitxai {

/// Per-leg Grad-CAM relevance over the 1414-point feature vector.
struct RelevanceMap {
    std::vector<double> raw;  // values in [0,1]
    GaitClass targetClass = GaitClass::TrueEquinus;
    std::string patientId;
    Side side = Side::Left;

    /// Row of a model channel (an exact slice of `raw`).
    CycleArray channel_row(ChannelId c) const;
    /// All 14 model-channel rows in model order.
    std::map<ChannelId, CycleArray> per_channel() const;

    bool operator==(const RelevanceMap&) const = default;
};

enum class RelevanceLevel : int { Low = 0, Middle = 1, High = 2 };

std::string_view to_string(RelevanceLevel level);

/// Low below 1/3, Middle in [1/3, 2/3), High from 2/3. Throws InvalidInput outside [0,1].
RelevanceLevel bin_relevance(double r);

/// Max of left and right relevance for all 29 channels; non-model channels are all zero.
std::map<ChannelId, CycleArray> overview_relevance(const RelevanceMap& left, const RelevanceMap& right);

struct RelevanceReading {
    double value = 0.0;
    bool inModel = false;
};

/// Linear interpolation of a channel row at a gait-cycle percentage in [0,100].
RelevanceReading relevance_at(const RelevanceMap& map, ChannelId channel, double cyclePercent);

}  // namespace gaitxai
