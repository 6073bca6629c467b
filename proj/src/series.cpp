#include "gaitxai/series.hpp"

#include "gaitxai/errors.hpp"

#include <algorithm>
#include <cmath>

namespace gaitxai {

GaitCycleSeries::GaitCycleSeries(const CycleArray& values, Unit unit) : values_(values), unit_(unit) {
    for (double v : values_) {
        if (!std::isfinite(v)) throw InvalidInput("gait cycle series contains a non-finite value");
    }
}

std::vector<double> resample_cycle(std::span<const double> raw, std::size_t n_out) {
    if (raw.size() < 2) throw InvalidInput("time normalization needs at least 2 samples");
    if (n_out < 2) throw InvalidInput("time normalization needs at least 2 output samples");
    for (double v : raw) {
        if (!std::isfinite(v)) throw InvalidInput("time normalization input contains a non-finite sample");
    }
    std::vector<double> out(n_out);
    const auto last_in = static_cast<double>(raw.size() - 1);
    const auto last_out = static_cast<double>(n_out - 1);
    out.front() = raw.front();
    out.back() = raw.back();
    for (std::size_t i = 1; i + 1 < n_out; ++i) {
        const double pos = static_cast<double>(i) * last_in / last_out;
        const auto k = std::min(static_cast<std::size_t>(pos), raw.size() - 2);
        const double frac = pos - static_cast<double>(k);
        out[i] = frac == 0.0 ? raw[k] : raw[k] + frac * (raw[k + 1] - raw[k]);
    }
    return out;
}

GaitCycleSeries time_normalize(std::span<const double> raw, Unit unit) {
    const auto resampled = resample_cycle(raw, kCyclePoints);
    CycleArray values{};
    std::copy(resampled.begin(), resampled.end(), values.begin());
    return GaitCycleSeries(values, unit);
}

GaitCycleSeries average_trials(std::span<const GaitCycleSeries> trials) {
    if (trials.empty()) throw InvalidInput("cannot average an empty trial list");
    const Unit unit = trials.front().unit();
    CycleArray sum{};
    for (const auto& t : trials) {
        if (t.unit() != unit) throw InvalidInput("trial unit mismatch");
        for (std::size_t i = 0; i < kCyclePoints; ++i) sum[i] += t[i];
    }
    const auto n = static_cast<double>(trials.size());
    for (auto& v : sum) v /= n;
    return GaitCycleSeries(sum, unit);
}

CycleArray min_max_normalize(const GaitCycleSeries& series) {
    const auto& v = series.values();
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double extent = *hi - *lo;
    CycleArray out{};
    if (extent < kDegenerateExtent) return out;
    for (std::size_t i = 0; i < kCyclePoints; ++i) out[i] = (v[i] - *lo) / extent;
    return out;
}

}  // namespace gaitxai
