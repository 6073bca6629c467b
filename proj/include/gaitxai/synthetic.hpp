#pragma once

#include "gaitxai/channels.hpp"
#include "gaitxai/dataset.hpp"

#include <cstdint>
#include <span>

namespace gaitxai {

/// Generator settings. Noise and motif strength are fractions of each channel's base amplitude
/// (max - min of its reference trajectory).
struct SyntheticConfig {
    std::size_t legsPerClass = 50;
    std::size_t trialsPerLeg = 5;
    double noiseStd = 0.05;
    double motifStrength = 0.5;
    std::uint64_t seed = 0;
    /// Additional unannotated patients (both legs affected) per class.
    std::size_t reviewPatientsPerClass = 0;
    /// Randomly permutes the annotations (null-hypothesis cohort).
    bool shuffleLabels = false;
    int firstId = 100001;

    void validate() const;
};

/// A planted class-specific deformation: a raised-cosine bump over [startPercent, endPercent]
/// of `channel`, with peak `direction * motifStrength * amplitude`.
struct MotifWindow {
    GaitClass gaitClass;
    ChannelId channel;
    double startPercent;
    double endPercent;
    double direction;
};

/// The fixed motif table (documented in the README).
std::span<const MotifWindow> motif_windows();

/// Noise-free reference trajectory of a channel.
CycleArray base_trajectory(ChannelId c);
double base_amplitude(ChannelId c);

/// Deterministic in `cfg.seed`. Classes are interleaved (patient i has class i mod 4) and both legs
/// of a patient carry that class; if legsPerClass is odd the last patient of each class has only
/// its left leg annotated and an unaffected right leg. Review patients follow, unannotated.
Dataset generate_synthetic_dataset(const SyntheticConfig& cfg);

}  // namespace gaitxai
