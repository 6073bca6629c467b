#pragma once

#include "gaitxai/channels.hpp"
#include "gaitxai/series.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gaitxai {

using ChannelSeriesMap = std::map<ChannelId, GaitCycleSeries>;

struct SideData {
    /// Each trial maps channels to their (already time-normalized) cycle.
    std::vector<ChannelSeriesMap> trials;
    ChannelSeriesMap averaged;
    GaitEvents events;

    bool operator==(const SideData&) const = default;
};

struct Prediction {
    GaitClass gaitClass = GaitClass::TrueEquinus;
    std::array<double, kNumClasses> probabilities{};

    bool operator==(const Prediction&) const = default;
};

/// One gait examination of one patient.
struct PatientRecord {
    std::string id;        // 6 digits
    std::string examDate;  // YYYY-MM-DD
    double walkingSpeed = 0.0;
    std::map<Side, SideData> perSide;
    std::map<Side, Prediction> predicted;
    std::map<Side, std::optional<GaitClass>> confirmed;

    const SideData& side(Side s) const;
    bool has_side(Side s) const { return perSide.contains(s); }
    const GaitCycleSeries& averaged(Side s, ChannelId c) const;

    bool operator==(const PatientRecord&) const = default;
};

bool is_valid_patient_id(const std::string& id);
bool is_valid_exam_date(const std::string& date);
bool is_valid_probability_vector(const std::array<double, kNumClasses>& p);

/// Checks every PatientRecord invariant; throws InvalidInput with a description.
void validate(const PatientRecord& patient);

/// Averages each channel over the trials (channels present in every trial).
ChannelSeriesMap average_side_trials(const std::vector<ChannelSeriesMap>& trials);

}  // namespace gaitxai
