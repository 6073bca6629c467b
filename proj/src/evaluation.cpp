#include "gaitxai/evaluation.hpp"

#include "gaitxai/errors.hpp"
#include "gaitxai/features.hpp"
#include "gaitxai/grad_cam.hpp"
#include "gaitxai/synthetic.hpp"

#include <algorithm>
#include <numeric>

namespace gaitxai {

AnnotatedSamples annotated_samples(const Dataset& ds) {
    AnnotatedSamples out;
    for (const auto& p : ds.patients) {
        for (auto s : kBothSides) {
            const auto it = ds.groundTruth.find({p.id, s});
            if (it == ds.groundTruth.end()) continue;
            const auto fv = build_feature_vector(p, s);
            out.samples.push_back({std::vector<double>(fv.values().begin(), fv.values().end()), it->second});
            out.legs.emplace_back(p.id, s);
        }
    }
    return out;
}

std::size_t ConfusionMatrix::total() const {
    std::size_t n = 0;
    for (const auto& row : counts) n += std::accumulate(row.begin(), row.end(), std::size_t{0});
    return n;
}

double ConfusionMatrix::accuracy() const {
    const auto n = total();
    if (n == 0) return 0.0;
    std::size_t hits = 0;
    for (std::size_t k = 0; k < kNumClasses; ++k) hits += counts[k][k];
    return static_cast<double>(hits) / static_cast<double>(n);
}

ClassificationReport classify(const ModelParams& params, std::span<const LabeledSample> samples,
                              std::span<const std::size_t> indices) {
    ClassificationReport r;
    for (auto i : indices) {
        if (i >= samples.size()) throw InvalidInput("sample index out of range");
        const auto pred = predict(params, samples[i].x);
        r.confusion.counts[index_of(samples[i].label)][index_of(pred.gaitClass)] += 1;
        r.indices.push_back(i);
        r.predictions.push_back(pred.gaitClass);
    }
    return r;
}

std::vector<bool> motif_mask(GaitClass cls) {
    std::vector<bool> mask(kFeatureLength, false);
    for (const auto& w : motif_windows()) {
        if (w.gaitClass != cls) continue;
        const auto m = model_index(w.channel);
        if (!m) continue;
        for (std::size_t i = 0; i < kCyclePoints; ++i) {
            const double pct = static_cast<double>(i);
            if (pct >= w.startPercent && pct <= w.endPercent) mask[*m * kCyclePoints + i] = true;
        }
    }
    return mask;
}

LocalizationScore localization_score(std::span<const double> relevance, GaitClass cls) {
    if (relevance.size() != kFeatureLength) throw InvalidInput("relevance must have 1414 values");
    const auto mask = motif_mask(cls);
    double in = 0.0, out = 0.0;
    std::size_t nIn = 0, nOut = 0;
    for (std::size_t i = 0; i < kFeatureLength; ++i) {
        if (mask[i]) {
            in += relevance[i];
            ++nIn;
        } else {
            out += relevance[i];
            ++nOut;
        }
    }
    LocalizationScore s;
    s.inside = nIn ? in / static_cast<double>(nIn) : 0.0;
    s.outside = nOut ? out / static_cast<double>(nOut) : 0.0;
    return s;
}

PerturbationScore perturbation_score(const ModelParams& params, std::span<const double> x,
                                     std::span<const double> relevance, std::span<const double> reference,
                                     GaitClass target) {
    const std::size_t n = x.size();
    if (relevance.size() != n || reference.size() != n) throw InvalidInput("perturbation inputs differ in length");
    const std::size_t k = n / 10;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return relevance[a] > relevance[b]; });

    auto probe = [&](auto first, auto last) {
        std::vector<double> xp(x.begin(), x.end());
        for (auto it = first; it != last; ++it) xp[*it] = reference[*it];
        return forward(params, xp).probabilities[index_of(target)];
    };
    PerturbationScore s;
    s.baseline = forward(params, x).probabilities[index_of(target)];
    s.top = probe(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    s.bottom = probe(order.end() - static_cast<std::ptrdiff_t>(k), order.end());
    return s;
}

std::vector<double> reference_input(std::span<const LabeledSample> samples, std::span<const std::size_t> trainIndices,
                                    GaitClass target) {
    std::vector<double> mean;
    std::size_t n = 0;
    for (auto i : trainIndices) {
        const auto& s = samples[i];
        if (s.label == target) continue;
        if (mean.empty()) mean.assign(s.x.size(), 0.0);
        for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += s.x[j];
        ++n;
    }
    if (n == 0) throw InvalidInput("no training samples outside the target class");
    for (auto& v : mean) v /= static_cast<double>(n);
    return mean;
}

double ExplanationReport::localization_rate(GaitClass cls) const {
    const auto c = correct[index_of(cls)];
    return c ? static_cast<double>(localized[index_of(cls)]) / static_cast<double>(c) : 0.0;
}

double ExplanationReport::fidelity_rate() const {
    return totalCorrect ? static_cast<double>(faithful) / static_cast<double>(totalCorrect) : 0.0;
}

ExplanationReport explanation_metrics(const ModelParams& params, std::span<const LabeledSample> samples,
                                      std::span<const std::size_t> trainIndices,
                                      std::span<const std::size_t> evalIndices) {
    std::array<std::vector<double>, kNumClasses> refs;
    for (auto cls : kAllClasses) refs[index_of(cls)] = reference_input(samples, trainIndices, cls);

    ExplanationReport r;
    for (auto i : evalIndices) {
        const auto& s = samples[i];
        if (predict(params, s.x).gaitClass != s.label) continue;
        const auto k = index_of(s.label);
        const auto cam = grad_cam_trace(params, s.x, s.label);
        r.correct[k] += 1;
        r.totalCorrect += 1;
        if (localization_score(cam.raw, s.label).localized()) r.localized[k] += 1;
        if (perturbation_score(params, s.x, cam.raw, refs[k], s.label).faithful()) r.faithful += 1;
    }
    return r;
}

}  // namespace gaitxai
