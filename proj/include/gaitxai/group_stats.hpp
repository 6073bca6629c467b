#pragma once

#include "gaitxai/patient.hpp"

#include <map>
#include <span>
#include <utility>
#include <vector>

namespace gaitxai {

/// One leg of the annotated cohort, labeled with its confirmed class.
struct LabeledLeg {
    const PatientRecord* patient = nullptr;
    Side side = Side::Left;
    GaitClass label = GaitClass::TrueEquinus;
};

struct ChannelStats {
    CycleArray mean{};
    CycleArray std{};  // population standard deviation
    std::size_t n = 0;

    bool operator==(const ChannelStats&) const = default;
};

using ChannelSideKey = std::pair<ChannelId, Side>;

struct GroupStats {
    GaitClass gaitClass = GaitClass::TrueEquinus;
    std::map<ChannelSideKey, ChannelStats> perChannelSide;

    const ChannelStats* find(ChannelId c, Side s) const;
    /// Number of distinct legs that contributed.
    std::size_t legs() const;

    bool operator==(const GroupStats&) const = default;
};

/// Pointwise mean and population SD of the averaged series of all legs labeled `gaitClass`,
/// separately per channel and side. Throws InvalidInput if no leg has that label.
GroupStats compute_group_stats(std::span<const LabeledLeg> cohort, GaitClass gaitClass);

inline constexpr double kDegenerateStd = 1e-12;

/// |z|-score against the group, maximized over the patient's sides, for all 29 channels.
/// Points where the group SD is below 1e-12 contribute 0. Throws MissingChannel when the group
/// lacks a (channel, side) the patient has.
std::map<ChannelId, CycleArray> zscore_overview(const PatientRecord& patient, const GroupStats& stats);

/// |left - right| divided by the channel's joint value extent over both sides, for all 29 channels.
/// Throws MissingSide unless both sides are present.
std::map<ChannelId, CycleArray> asymmetry_overview(const PatientRecord& patient);

}  // namespace gaitxai
