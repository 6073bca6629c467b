#include "gaitxai/group_stats.hpp"

#include "gaitxai/errors.hpp"

#include <cmath>
#include <set>

namespace gaitxai {

const ChannelStats* GroupStats::find(ChannelId c, Side s) const {
    const auto it = perChannelSide.find({c, s});
    return it == perChannelSide.end() ? nullptr : &it->second;
}

std::size_t GroupStats::legs() const {
    std::size_t n = 0;
    for (Side s : kBothSides) {
        for (const auto& c : channel_catalog()) {
            if (const auto* st = find(c, s)) {
                n += st->n;
                break;
            }
        }
    }
    return n;
}

GroupStats compute_group_stats(std::span<const LabeledLeg> cohort, GaitClass gaitClass) {
    GroupStats stats;
    stats.gaitClass = gaitClass;
    // Welford accumulators; the mean/M2 arrays live directly in the result.
    std::map<ChannelSideKey, CycleArray> m2;
    bool any = false;
    for (const auto& leg : cohort) {
        if (leg.label != gaitClass || leg.patient == nullptr) continue;
        const auto it = leg.patient->perSide.find(leg.side);
        if (it == leg.patient->perSide.end()) continue;
        any = true;
        for (const auto& [c, series] : it->second.averaged) {
            auto& st = stats.perChannelSide[{c, leg.side}];
            auto& acc = m2[{c, leg.side}];
            ++st.n;
            const auto n = static_cast<double>(st.n);
            for (std::size_t t = 0; t < kCyclePoints; ++t) {
                const double delta = series[t] - st.mean[t];
                st.mean[t] += delta / n;
                acc[t] += delta * (series[t] - st.mean[t]);
            }
        }
    }
    if (!any) throw InvalidInput("no legs labeled " + std::string(to_string(gaitClass)));
    for (auto& [k, st] : stats.perChannelSide) {
        const auto& acc = m2[k];
        for (std::size_t t = 0; t < kCyclePoints; ++t)
            st.std[t] = std::sqrt(std::max(0.0, acc[t] / static_cast<double>(st.n)));
    }
    return stats;
}

std::map<ChannelId, CycleArray> zscore_overview(const PatientRecord& patient, const GroupStats& stats) {
    std::map<ChannelId, CycleArray> out;
    for (const auto& c : channel_catalog()) out.emplace(c, CycleArray{});
    for (const auto& [side, sd] : patient.perSide) {
        for (const auto& c : channel_catalog()) {
            const auto it = sd.averaged.find(c);
            if (it == sd.averaged.end()) continue;
            const auto* st = stats.find(c, side);
            if (st == nullptr) throw MissingChannel(key(c));
            auto& row = out[c];
            for (std::size_t t = 0; t < kCyclePoints; ++t) {
                if (st->std[t] < kDegenerateStd) continue;
                const double z = std::abs((it->second[t] - st->mean[t]) / st->std[t]);
                row[t] = std::max(row[t], z);
            }
        }
    }
    return out;
}

std::map<ChannelId, CycleArray> asymmetry_overview(const PatientRecord& patient) {
    if (!patient.has_side(Side::Left) || !patient.has_side(Side::Right))
        throw MissingSide("asymmetry needs both sides of patient " + patient.id);
    std::map<ChannelId, CycleArray> out;
    for (const auto& c : channel_catalog()) {
        const auto& left = patient.averaged(Side::Left, c);
        const auto& right = patient.averaged(Side::Right, c);
        double lo = left[0];
        double hi = left[0];
        for (std::size_t t = 0; t < kCyclePoints; ++t) {
            lo = std::min({lo, left[t], right[t]});
            hi = std::max({hi, left[t], right[t]});
        }
        const double extent = hi - lo;
        CycleArray row{};
        if (extent >= kDegenerateStd) {
            for (std::size_t t = 0; t < kCyclePoints; ++t) row[t] = std::abs(left[t] - right[t]) / extent;
        }
        out.emplace(c, row);
    }
    return out;
}

}  // namespace gaitxai
