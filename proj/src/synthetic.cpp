#include "gaitxai/synthetic.hpp"

#include "gaitxai/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace gaitxai {

namespace {

struct Bump {
    double amplitude;
    double center;  // percent
    double width;   // percent (Gaussian sigma)
};

struct BaseShape {
    double offset;
    std::vector<Bump> bumps;
};

using V = Variable;
using B = BodyPart;
using P = Plane;

// Reference trajectories: an offset plus cycle-periodic Gaussian bumps, loosely shaped after
// typical clinical gait curves.
BaseShape base_shape(ChannelId c) {
    const auto is = [&](V v, B b, P p) { return c == ChannelId{v, b, p}; };
    if (is(V::Angle, B::Pelvis, P::Sagittal)) return {10.0, {{2.0, 25, 10}, {2.0, 75, 10}}};
    if (is(V::Angle, B::Pelvis, P::Frontal)) return {0.0, {{4.0, 15, 8}, {-4.0, 65, 8}}};
    if (is(V::Angle, B::Pelvis, P::Transverse)) return {0.0, {{5.0, 0, 15}, {-5.0, 50, 15}}};
    if (is(V::Angle, B::Hip, P::Sagittal)) return {10.0, {{20.0, 0, 12}, {-20.0, 50, 15}, {25.0, 88, 12}}};
    if (is(V::Angle, B::Hip, P::Frontal)) return {0.0, {{6.0, 18, 10}, {-6.0, 70, 10}}};
    if (is(V::Angle, B::Hip, P::Transverse)) return {0.0, {{4.0, 30, 15}, {-4.0, 80, 12}}};
    if (is(V::Angle, B::Knee, P::Sagittal)) return {5.0, {{15.0, 15, 6}, {55.0, 72, 10}}};
    if (is(V::Angle, B::Knee, P::Frontal)) return {0.0, {{5.0, 70, 10}, {-1.5, 25, 10}}};
    if (is(V::Angle, B::Knee, P::Transverse)) return {-5.0, {{8.0, 65, 12}, {2.0, 20, 8}}};
    if (is(V::Angle, B::Ankle, P::Sagittal)) return {0.0, {{-5.0, 5, 4}, {10.0, 45, 12}, {-20.0, 65, 6}}};
    if (is(V::Angle, B::Ankle, P::Frontal)) return {0.0, {{3.0, 40, 15}, {-1.0, 80, 8}}};
    if (is(V::Angle, B::Ankle, P::Transverse)) return {-5.0, {{5.0, 70, 12}, {-2.0, 20, 10}}};
    if (is(V::Angle, B::FootProgression, P::Transverse)) return {-10.0, {{4.0, 65, 10}, {-1.5, 20, 8}}};
    if (is(V::Angle, B::FootFloor, P::Sagittal)) return {0.0, {{20.0, 5, 4}, {-30.0, 65, 8}}};
    if (is(V::Moment, B::Hip, P::Sagittal)) return {0.0, {{0.8, 10, 6}, {-0.8, 50, 8}}};
    if (is(V::Moment, B::Hip, P::Frontal)) return {0.0, {{0.7, 20, 8}, {0.6, 45, 8}}};
    if (is(V::Moment, B::Hip, P::Transverse)) return {0.0, {{0.15, 15, 6}, {-0.15, 45, 8}}};
    if (is(V::Moment, B::Knee, P::Sagittal)) return {0.0, {{0.5, 15, 5}, {-0.2, 45, 8}}};
    if (is(V::Moment, B::Knee, P::Frontal)) return {0.0, {{0.4, 20, 8}, {0.3, 45, 8}}};
    if (is(V::Moment, B::Knee, P::Transverse)) return {0.0, {{0.1, 25, 10}, {-0.05, 50, 6}}};
    if (is(V::Moment, B::Ankle, P::Sagittal)) return {0.0, {{-0.2, 5, 3}, {1.4, 47, 10}}};
    if (is(V::Moment, B::Ankle, P::Frontal)) return {0.0, {{0.15, 40, 10}, {-0.05, 10, 4}}};
    if (is(V::Moment, B::Ankle, P::Transverse)) return {0.0, {{0.2, 40, 10}, {-0.05, 10, 4}}};
    if (is(V::Power, B::Hip, P::Sagittal)) return {0.0, {{1.0, 10, 5}, {-0.6, 45, 8}, {0.8, 60, 6}}};
    if (is(V::Power, B::Knee, P::Sagittal)) return {0.0, {{-0.8, 10, 4}, {0.4, 20, 5}, {-1.0, 65, 5}}};
    if (is(V::Power, B::Ankle, P::Sagittal)) return {0.0, {{-0.5, 30, 10}, {3.5, 53, 5}}};
    if (is(V::GRF, B::FootFloor, P::Sagittal)) return {0.0, {{-20.0, 12, 5}, {22.0, 48, 6}}};
    if (is(V::GRF, B::FootFloor, P::Frontal)) return {0.0, {{8.0, 15, 6}, {6.0, 45, 6}}};
    if (is(V::GRF, B::FootFloor, P::Transverse)) return {0.0, {{105.0, 12, 6}, {105.0, 48, 6}, {20.0, 30, 10}}};
    throw InvalidInput("no reference trajectory for " + key(c));
}

double periodic_gaussian(double t, const Bump& b) {
    double sum = 0.0;
    for (double shift : {-100.0, 0.0, 100.0}) {
        const double d = (t - b.center - shift) / b.width;
        sum += std::exp(-0.5 * d * d);
    }
    return b.amplitude * sum;
}

double shape_at(const BaseShape& s, double t) {
    double v = s.offset;
    for (const auto& b : s.bumps) v += periodic_gaussian(t, b);
    return v;
}

double raised_cosine(double t, double start, double end) {
    if (t <= start || t >= end) return 0.0;
    return 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * (t - start) / (end - start)));
}

constexpr ChannelId ch(V v, B b, P p) { return ChannelId{v, b, p}; }

// Windows are disjoint between classes within every channel and all lie in the model channel set.
constexpr std::array<MotifWindow, 8> kMotifs = {{
    {GaitClass::TrueEquinus, ch(V::Angle, B::Ankle, P::Sagittal), 10.0, 50.0, -1.0},
    {GaitClass::TrueEquinus, ch(V::Angle, B::Hip, P::Transverse), 55.0, 95.0, 1.0},
    {GaitClass::JumpGait, ch(V::Angle, B::Knee, P::Sagittal), 0.0, 25.0, 1.0},
    {GaitClass::JumpGait, ch(V::Angle, B::Ankle, P::Sagittal), 60.0, 95.0, -1.0},
    {GaitClass::ApparentEquinus, ch(V::Angle, B::Hip, P::Sagittal), 20.0, 55.0, 1.0},
    {GaitClass::ApparentEquinus, ch(V::Angle, B::Pelvis, P::Sagittal), 20.0, 65.0, 1.0},
    {GaitClass::CrouchGait, ch(V::Angle, B::Knee, P::Sagittal), 30.0, 60.0, 1.0},
    {GaitClass::CrouchGait, ch(V::GRF, B::FootFloor, P::Sagittal), 15.0, 45.0, -1.0},
}};

struct LegFactors {
    double scale;
    double offset;
    double shift;
    double wobbleAmp;
    double wobblePhase;
};

class LegSynthesizer {
public:
    LegSynthesizer(const SyntheticConfig& cfg, std::mt19937_64& rng) : cfg_(cfg), rng_(rng) {}

    SideData make_side(std::optional<GaitClass> affectedBy) {
        std::normal_distribution<double> n01(0.0, 1.0);
        const double motifJitter = 1.0 + 0.1 * n01(rng_);
        std::map<ChannelId, CycleArray> clean;
        for (const auto& c : channel_catalog()) {
            const LegFactors f{1.0 + 0.1 * n01(rng_), 0.1 * n01(rng_), 1.5 * n01(rng_), 0.05 * n01(rng_),
                               2.0 * std::numbers::pi * std::uniform_real_distribution<double>(0.0, 1.0)(rng_)};
            const auto shape = base_shape(c);
            const double amp = base_amplitude(c);
            CycleArray v{};
            for (std::size_t i = 0; i < kCyclePoints; ++i) {
                const double t = static_cast<double>(i);
                v[i] = f.scale * shape_at(shape, t - f.shift) + f.offset * amp +
                       f.wobbleAmp * amp * std::sin(2.0 * std::numbers::pi * t / 100.0 + f.wobblePhase);
            }
            if (affectedBy) {
                for (const auto& m : kMotifs) {
                    if (m.gaitClass != *affectedBy || m.channel != c) continue;
                    for (std::size_t i = 0; i < kCyclePoints; ++i)
                        v[i] += m.direction * cfg_.motifStrength * motifJitter * amp *
                                raised_cosine(static_cast<double>(i), m.startPercent, m.endPercent);
                }
            }
            clean.emplace(c, v);
        }

        SideData sd;
        for (std::size_t k = 0; k < cfg_.trialsPerLeg; ++k) {
            ChannelSeriesMap trial;
            for (const auto& [c, v] : clean) {
                CycleArray noisy = v;
                if (cfg_.noiseStd > 0.0) {
                    const double sigma = cfg_.noiseStd * base_amplitude(c);
                    for (auto& x : noisy) x += sigma * n01(rng_);
                }
                trial.emplace(c, GaitCycleSeries(noisy, unit_of(c)));
            }
            sd.trials.push_back(std::move(trial));
        }
        sd.averaged = average_side_trials(sd.trials);
        sd.events.oppositeToeOff = std::clamp(10.0 + 1.0 * n01(rng_), 6.0, 14.0);
        sd.events.oppositeInitialContact = std::clamp(50.0 + 1.5 * n01(rng_), 45.0, 55.0);
        sd.events.toeOff = std::clamp(60.0 + 1.5 * n01(rng_), 56.0, 66.0);
        return sd;
    }

private:
    const SyntheticConfig& cfg_;
    std::mt19937_64& rng_;
};

std::string format_id(int id) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%06d", id);
    return buf;
}

std::string random_date(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> year(2015, 2022);
    std::uniform_int_distribution<int> month(1, 12);
    std::uniform_int_distribution<int> day(1, 28);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year(rng), month(rng), day(rng));
    return buf;
}

}  // namespace

void SyntheticConfig::validate() const {
    if (legsPerClass < 2) throw InvalidInput("legsPerClass must be at least 2");
    if (trialsPerLeg < 1) throw InvalidInput("trialsPerLeg must be at least 1");
    if (!(noiseStd >= 0.0) || !std::isfinite(noiseStd)) throw InvalidInput("noiseStd must be a non-negative number");
    if (!std::isfinite(motifStrength)) throw InvalidInput("motifStrength must be finite");
    const std::size_t patients = kNumClasses * ((legsPerClass + 1) / 2 + reviewPatientsPerClass);
    if (firstId < 0 || static_cast<std::size_t>(firstId) + patients > 1000000)
        throw InvalidInput("patient ids would not fit in 6 digits");
}

std::span<const MotifWindow> motif_windows() { return kMotifs; }

CycleArray base_trajectory(ChannelId c) {
    const auto shape = base_shape(c);
    CycleArray v{};
    for (std::size_t i = 0; i < kCyclePoints; ++i) v[i] = shape_at(shape, static_cast<double>(i));
    return v;
}

double base_amplitude(ChannelId c) {
    const auto v = base_trajectory(c);
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

Dataset generate_synthetic_dataset(const SyntheticConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.seed);
    LegSynthesizer synth(cfg, rng);
    Dataset ds;
    int nextId = cfg.firstId;

    auto make_patient = [&](GaitClass cls, bool rightAffected, bool annotate) {
        PatientRecord p;
        p.id = format_id(nextId++);
        p.examDate = random_date(rng);
        p.walkingSpeed = std::uniform_real_distribution<double>(0.6, 1.3)(rng);
        p.perSide.emplace(Side::Left, synth.make_side(cls));
        p.perSide.emplace(Side::Right, synth.make_side(rightAffected ? std::optional(cls) : std::nullopt));
        if (annotate) {
            ds.groundTruth[{p.id, Side::Left}] = cls;
            if (rightAffected) ds.groundTruth[{p.id, Side::Right}] = cls;
        }
        ds.patients.push_back(std::move(p));
    };

    // Annotated cohort, classes interleaved (patient i has class i mod 4).
    const std::size_t patientsPerClass = (cfg.legsPerClass + 1) / 2;
    for (std::size_t i = 0; i < patientsPerClass; ++i) {
        const bool lastOdd = cfg.legsPerClass % 2 == 1 && i + 1 == patientsPerClass;
        for (auto cls : kAllClasses) make_patient(cls, !lastOdd, true);
    }
    for (std::size_t i = 0; i < cfg.reviewPatientsPerClass; ++i) {
        for (auto cls : kAllClasses) make_patient(cls, true, false);
    }

    if (cfg.shuffleLabels) {
        std::vector<GaitClass> labels;
        for (const auto& [leg, cls] : ds.groundTruth) labels.push_back(cls);
        for (std::size_t i = labels.size(); i > 1; --i) std::swap(labels[i - 1], labels[rng() % i]);
        std::size_t k = 0;
        for (auto& [leg, cls] : ds.groundTruth) cls = labels[k++];
    }
    return ds;
}

}  // namespace gaitxai
