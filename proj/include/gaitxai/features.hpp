#pragma once

#include "gaitxai/patient.hpp"

#include <span>
#include <string>
#include <vector>

namespace gaitxai {

inline constexpr std::size_t kFeatureLength = kNumModelChannels * kCyclePoints;  // 1414

/// Per-leg classifier input: 14 min-max normalized cycles, concatenated in model channel order.
class FeatureVector {
public:
    FeatureVector(std::vector<double> values, std::string patientId, Side side);

    std::span<const double> values() const noexcept { return values_; }
    std::span<const double> segment(std::size_t modelChannel) const;
    const std::string& patientId() const noexcept { return patientId_; }
    Side side() const noexcept { return side_; }
    std::size_t size() const noexcept { return values_.size(); }

private:
    std::vector<double> values_;
    std::string patientId_;
    Side side_;
};

/// Throws MissingChannel if a model channel is absent, MissingSide if the side is.
FeatureVector build_feature_vector(const PatientRecord& patient, Side side);

}  // namespace gaitxai
