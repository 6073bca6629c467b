#include "gaitxai/features.hpp"

#include "gaitxai/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cctype>
#include <cmath>

namespace gaitxai {

const SideData& PatientRecord::side(Side s) const {
    const auto it = perSide.find(s);
    if (it == perSide.end()) throw MissingSide("patient " + id + " has no " + std::string(to_string(s)) + " side");
    return it->second;
}

const GaitCycleSeries& PatientRecord::averaged(Side s, ChannelId c) const {
    const auto& sd = side(s);
    const auto it = sd.averaged.find(c);
    if (it == sd.averaged.end()) throw MissingChannel(key(c));
    return it->second;
}

bool is_valid_patient_id(const std::string& id) {
    return id.size() == 6 && std::all_of(id.begin(), id.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

bool is_valid_exam_date(const std::string& date) {
    if (date.size() != 10 || date[4] != '-' || date[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (!std::isdigit(static_cast<unsigned char>(date[i]))) return false;
    }
    const std::chrono::year_month_day ymd{std::chrono::year(std::stoi(date.substr(0, 4))),
                                          std::chrono::month(static_cast<unsigned>(std::stoi(date.substr(5, 2)))),
                                          std::chrono::day(static_cast<unsigned>(std::stoi(date.substr(8, 2))))};
    return ymd.ok();
}

bool is_valid_probability_vector(const std::array<double, kNumClasses>& p) {
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) return false;
        sum += v;
    }
    return std::abs(sum - 1.0) <= 1e-9;
}

void validate(const PatientRecord& patient) {
    if (!is_valid_patient_id(patient.id)) throw InvalidInput("patient id must have 6 digits: '" + patient.id + "'");
    if (!is_valid_exam_date(patient.examDate))
        throw InvalidInput("patient " + patient.id + ": invalid exam date '" + patient.examDate + "'");
    if (!std::isfinite(patient.walkingSpeed) || patient.walkingSpeed <= 0.0)
        throw InvalidInput("patient " + patient.id + ": walking speed must be positive");
    for (const auto& [s, sd] : patient.perSide) {
        const std::string where = "patient " + patient.id + " " + std::string(to_string(s)) + ": ";
        for (const auto& c : channel_catalog()) {
            if (!sd.averaged.contains(c)) throw MissingChannel(key(c));
        }
        for (std::size_t t = 0; t < sd.trials.size(); ++t) {
            for (const auto& c : model_channels()) {
                if (!sd.trials[t].contains(c)) throw MissingChannel(key(c));
            }
        }
        for (const auto& [c, series] : sd.averaged) {
            if (series.unit() != unit_of(c)) throw InvalidInput(where + "unit mismatch on " + key(c));
        }
        if (!sd.events.valid()) throw InvalidInput(where + "gait events out of order");
    }
    for (const auto& [s, pred] : patient.predicted) {
        if (!is_valid_probability_vector(pred.probabilities))
            throw InvalidInput("patient " + patient.id + ": invalid probability vector");
    }
}

ChannelSeriesMap average_side_trials(const std::vector<ChannelSeriesMap>& trials) {
    if (trials.empty()) throw InvalidInput("cannot average an empty trial list");
    ChannelSeriesMap out;
    for (const auto& [c, first] : trials.front()) {
        std::vector<GaitCycleSeries> column;
        column.reserve(trials.size());
        for (const auto& t : trials) {
            const auto it = t.find(c);
            if (it == t.end()) break;
            column.push_back(it->second);
        }
        if (column.size() == trials.size()) out.emplace(c, average_trials(column));
    }
    return out;
}

FeatureVector::FeatureVector(std::vector<double> values, std::string patientId, Side side)
    : values_(std::move(values)), patientId_(std::move(patientId)), side_(side) {
    if (values_.size() != kFeatureLength) throw InvalidInput("feature vector must have 1414 values");
}

std::span<const double> FeatureVector::segment(std::size_t modelChannel) const {
    return std::span<const double>(values_).subspan(modelChannel * kCyclePoints, kCyclePoints);
}

FeatureVector build_feature_vector(const PatientRecord& patient, Side side) {
    const auto& sd = patient.side(side);
    std::vector<double> values;
    values.reserve(kFeatureLength);
    for (const auto& c : model_channels()) {
        const auto it = sd.averaged.find(c);
        if (it == sd.averaged.end()) throw MissingChannel(key(c));
        const auto normalized = min_max_normalize(it->second);
        values.insert(values.end(), normalized.begin(), normalized.end());
    }
    return FeatureVector(std::move(values), patient.id, side);
}

}  // namespace gaitxai
