#pragma once

#include "gaitxai/channels.hpp"

#include <array>
#include <span>
#include <vector>

namespace gaitxai {

inline constexpr std::size_t kCyclePoints = 101;

using CycleArray = std::array<double, kCyclePoints>;

/// A signal time-normalized to one gait cycle (0..100 %, one sample per percent).
class GaitCycleSeries {
public:
    /// Throws InvalidInput on non-finite values.
    GaitCycleSeries(const CycleArray& values, Unit unit);

    const CycleArray& values() const noexcept { return values_; }
    Unit unit() const noexcept { return unit_; }
    double operator[](std::size_t i) const { return values_[i]; }

    bool operator==(const GaitCycleSeries&) const = default;

private:
    CycleArray values_;
    Unit unit_;
};

/// Gait events in percent of the gait cycle.
struct GaitEvents {
    double oppositeToeOff = 10.0;
    double oppositeInitialContact = 50.0;
    double toeOff = 60.0;

    bool valid() const noexcept {
        return 0.0 < oppositeToeOff && oppositeToeOff < oppositeInitialContact &&
               oppositeInitialContact < toeOff && toeOff < 100.0;
    }
    bool operator==(const GaitEvents&) const = default;
};

/// Linear resampling of one gait cycle onto `n_out` equidistant parameter positions.
/// Endpoints are preserved exactly.
std::vector<double> resample_cycle(std::span<const double> raw, std::size_t n_out);

GaitCycleSeries time_normalize(std::span<const double> raw, Unit unit);

/// Pointwise mean of the trials; all trials must share one unit.
GaitCycleSeries average_trials(std::span<const GaitCycleSeries> trials);

inline constexpr double kDegenerateExtent = 1e-12;

/// Rescales to [0,1] by the series' own extremes; a constant series maps to zeros.
CycleArray min_max_normalize(const GaitCycleSeries& series);

}  // namespace gaitxai
