#include "gaitxai/relevance.hpp"

#include "gaitxai/errors.hpp"
#include "gaitxai/features.hpp"

#include <algorithm>
#include <cmath>

namespace gaitxai {

CycleArray RelevanceMap::channel_row(ChannelId c) const {
    const auto idx = model_index(c);
    if (!idx) throw InvalidInput(key(c) + " is not a model channel");
    if (raw.size() != kFeatureLength) throw InvalidInput("relevance map does not cover the feature vector");
    CycleArray row{};
    std::copy_n(raw.begin() + static_cast<std::ptrdiff_t>(*idx * kCyclePoints), kCyclePoints, row.begin());
    return row;
}

std::map<ChannelId, CycleArray> RelevanceMap::per_channel() const {
    std::map<ChannelId, CycleArray> rows;
    for (const auto& c : model_channels()) rows.emplace(c, channel_row(c));
    return rows;
}

std::string_view to_string(RelevanceLevel level) {
    switch (level) {
        case RelevanceLevel::Low: return "low";
        case RelevanceLevel::Middle: return "middle";
        case RelevanceLevel::High: return "high";
    }
    return "?";
}

RelevanceLevel bin_relevance(double r) {
    if (!(r >= 0.0 && r <= 1.0)) throw InvalidInput("relevance must lie in [0,1]");
    // Written as 3r against 1 and 2 so the exact double nearest 1/3 (resp. 2/3) lands in the upper bin.
    if (3.0 * r < 1.0) return RelevanceLevel::Low;
    if (3.0 * r < 2.0) return RelevanceLevel::Middle;
    return RelevanceLevel::High;
}

std::map<ChannelId, CycleArray> overview_relevance(const RelevanceMap& left, const RelevanceMap& right) {
    std::map<ChannelId, CycleArray> out;
    for (const auto& c : channel_catalog()) {
        CycleArray row{};
        if (in_model(c)) {
            const auto l = left.channel_row(c);
            const auto r = right.channel_row(c);
            for (std::size_t t = 0; t < kCyclePoints; ++t) row[t] = std::max(l[t], r[t]);
        }
        out.emplace(c, row);
    }
    return out;
}

RelevanceReading relevance_at(const RelevanceMap& map, ChannelId channel, double cyclePercent) {
    if (!(cyclePercent >= 0.0 && cyclePercent <= 100.0)) throw InvalidInput("cycle percent must lie in [0,100]");
    if (!in_model(channel)) return RelevanceReading{0.0, false};
    const auto row = map.channel_row(channel);
    const auto k = std::min(static_cast<std::size_t>(cyclePercent), kCyclePoints - 2);
    const double frac = cyclePercent - static_cast<double>(k);
    const double value = frac == 0.0 ? row[k] : row[k] + frac * (row[k + 1] - row[k]);
    return RelevanceReading{value, true};
}

}  // namespace gaitxai
