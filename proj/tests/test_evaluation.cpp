#include "doctest.h"

#include "gaitxai/errors.hpp"
#include "gaitxai/evaluation.hpp"
#include "gaitxai/features.hpp"
#include "gaitxai/synthetic.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace gaitxai;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

// Target-class probability after overwriting `positions` with the reference values.
double probe(const ModelParams& p, std::vector<double> x, const std::vector<double>& ref,
             const std::vector<std::size_t>& positions, std::size_t target) {
    for (auto i : positions) x[i] = ref[i];
    return oracle::forward(p, x).probabilities[target];
}

}  // namespace

TEST_CASE("annotated samples follow dataset order, left before right") {
    SyntheticConfig cfg;
    cfg.legsPerClass = 3;
    cfg.trialsPerLeg = 1;
    cfg.reviewPatientsPerClass = 1;
    const auto ds = generate_synthetic_dataset(cfg);
    const auto a = annotated_samples(ds);
    REQUIRE(a.samples.size() == 12);
    REQUIRE(a.legs.size() == 12);
    CHECK(a.legs[0] == LegKey{ds.patients[0].id, Side::Left});
    CHECK(a.legs[1] == LegKey{ds.patients[0].id, Side::Right});
    CHECK(a.legs[2] == LegKey{ds.patients[1].id, Side::Left});
    for (std::size_t i = 0; i < a.legs.size(); ++i) {
        CHECK(a.samples[i].label == ds.groundTruth.at(a.legs[i]));
        const auto fv = build_feature_vector(*ds.find(a.legs[i].first), a.legs[i].second);
        CHECK(std::equal(a.samples[i].x.begin(), a.samples[i].x.end(), fv.values().begin()));
    }
}

TEST_CASE("confusion matrix and classification report") {
    ConfusionMatrix m;
    CHECK(m.accuracy() == 0.0);
    m.counts[0][0] = 3;
    m.counts[1][2] = 1;
    m.counts[3][3] = 4;
    CHECK(m.total() == 8);
    CHECK(m.accuracy() == doctest::Approx(7.0 / 8.0));

    ModelConfig cfg;
    cfg.featureMaps = 4;
    cfg.fcWidth = 8;
    auto params = ModelParams::zeros(cfg);
    params.out.biases[3] = 1.0;  // always predicts CrouchGait
    std::mt19937_64 rng(1);
    std::vector<LabeledSample> samples;
    for (auto cls : kAllClasses) samples.push_back({random_vector(kFeatureLength, rng), cls});
    const std::vector<std::size_t> idx{0, 2, 3};
    const auto r = classify(params, samples, idx);
    CHECK(r.indices == idx);
    CHECK(r.predictions == std::vector<GaitClass>(3, GaitClass::CrouchGait));
    CHECK(r.confusion.counts[0][3] == 1);
    CHECK(r.confusion.counts[2][3] == 1);
    CHECK(r.confusion.counts[3][3] == 1);
    CHECK(r.confusion.accuracy() == doctest::Approx(1.0 / 3.0));
    const std::vector<std::size_t> bad{7};
    CHECK_THROWS_AS(classify(params, samples, bad), InvalidInput);
}

TEST_CASE("motif masks cover exactly the planted windows") {
    std::size_t total = 0;
    for (auto cls : kAllClasses) {
        const auto mask = motif_mask(cls);
        REQUIRE(mask.size() == kFeatureLength);
        std::vector<bool> want(kFeatureLength, false);
        for (const auto& w : motif_windows()) {
            if (w.gaitClass != cls) continue;
            const std::size_t seg = *model_index(w.channel);
            for (int i = static_cast<int>(std::ceil(w.startPercent)); i <= static_cast<int>(std::floor(w.endPercent)); ++i)
                want[seg * 101 + static_cast<std::size_t>(i)] = true;
        }
        CHECK(mask == want);
        total += static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true));
    }
    CHECK(total > 0);
}

TEST_CASE("localization compares mean relevance inside and outside the motifs") {
    const auto mask = motif_mask(GaitClass::JumpGait);
    std::vector<double> rel(kFeatureLength, 0.2);
    for (std::size_t i = 0; i < kFeatureLength; ++i)
        if (mask[i]) rel[i] = 0.9;
    auto s = localization_score(rel, GaitClass::JumpGait);
    CHECK(s.inside == doctest::Approx(0.9));
    CHECK(s.outside == doctest::Approx(0.2));
    CHECK(s.localized());
    s = localization_score(rel, GaitClass::TrueEquinus);
    CHECK_FALSE(s.localized());
    const std::vector<double> flat(kFeatureLength, 0.5);
    CHECK_FALSE(localization_score(flat, GaitClass::CrouchGait).localized());
    CHECK_THROWS_AS(localization_score(std::vector<double>(10, 0.0), GaitClass::JumpGait), InvalidInput);
}

TEST_CASE("perturbation replaces the top and bottom deciles") {
    ModelConfig cfg;
    cfg.featureMaps = 6;
    cfg.fcWidth = 16;
    const auto params = ModelParams::lecun_normal(cfg, 3);
    std::mt19937_64 rng(9);
    const auto x = random_vector(kFeatureLength, rng);
    const auto ref = random_vector(kFeatureLength, rng);

    // Distinct relevance values: a shuffled ramp.
    std::vector<std::size_t> perm(kFeatureLength);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> rel(kFeatureLength);
    for (std::size_t i = 0; i < kFeatureLength; ++i) rel[i] = static_cast<double>(perm[i]) / kFeatureLength;
    std::vector<std::size_t> top, bottom;
    for (std::size_t i = 0; i < kFeatureLength; ++i) {
        if (perm[i] >= kFeatureLength - kDecilePoints) top.push_back(i);
        if (perm[i] < kDecilePoints) bottom.push_back(i);
    }
    REQUIRE(top.size() == 141);
    REQUIRE(bottom.size() == 141);

    const auto s = perturbation_score(params, x, rel, ref, GaitClass::ApparentEquinus);
    CHECK(s.baseline == doctest::Approx(oracle::forward(params, x).probabilities[2]).epsilon(1e-10));
    CHECK(s.top == doctest::Approx(probe(params, x, ref, top, 2)).epsilon(1e-10));
    CHECK(s.bottom == doctest::Approx(probe(params, x, ref, bottom, 2)).epsilon(1e-10));
    CHECK(s.faithful() == (s.baseline - s.top > s.baseline - s.bottom));

    // Ties keep positional order: the first and last 141 positions.
    const std::vector<double> flat(kFeatureLength, 0.0);
    std::vector<std::size_t> first(141), last(141);
    std::iota(first.begin(), first.end(), std::size_t{0});
    std::iota(last.begin(), last.end(), kFeatureLength - 141);
    const auto t = perturbation_score(params, x, flat, ref, GaitClass::JumpGait);
    CHECK(t.top == doctest::Approx(probe(params, x, ref, first, 1)).epsilon(1e-10));
    CHECK(t.bottom == doctest::Approx(probe(params, x, ref, last, 1)).epsilon(1e-10));
}

TEST_CASE("reference input averages the other classes' training samples") {
    std::vector<LabeledSample> samples{{{1.0, 2.0}, GaitClass::TrueEquinus},
                                       {{3.0, 6.0}, GaitClass::JumpGait},
                                       {{5.0, 0.0}, GaitClass::CrouchGait},
                                       {{100.0, 100.0}, GaitClass::CrouchGait}};
    const std::vector<std::size_t> train{0, 1, 2};
    CHECK(reference_input(samples, train, GaitClass::TrueEquinus) == std::vector<double>{4.0, 3.0});
    CHECK(reference_input(samples, train, GaitClass::ApparentEquinus) == std::vector<double>{3.0, 8.0 / 3.0});
    const std::vector<std::size_t> only{0};
    CHECK_THROWS_AS(reference_input(samples, only, GaitClass::TrueEquinus), InvalidInput);
}

TEST_CASE("explanation metrics count only correctly classified samples") {
    SyntheticConfig scfg;
    scfg.legsPerClass = 2;
    scfg.trialsPerLeg = 1;
    const auto a = annotated_samples(generate_synthetic_dataset(scfg));
    ModelConfig cfg;
    cfg.featureMaps = 4;
    cfg.fcWidth = 8;
    auto params = ModelParams::lecun_normal(cfg, 5);
    std::fill(params.out.weights.begin(), params.out.weights.end(), 0.0);
    params.out.biases = {0.0, 0.0, 0.0, 0.0};
    params.out.biases[1] = 5.0;  // always JumpGait
    for (std::size_t i = 0; i < params.out.in; ++i) params.out.weights[1 * params.out.in + i] = 0.01;
    std::vector<std::size_t> all(a.samples.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const auto r = explanation_metrics(params, a.samples, all, all);
    CHECK(r.totalCorrect == 2);
    CHECK(r.correct[1] == 2);
    CHECK(r.correct[0] + r.correct[2] + r.correct[3] == 0);
    CHECK(r.localized[1] <= 2);
    CHECK(r.faithful <= 2);
    CHECK(r.localization_rate(GaitClass::TrueEquinus) == 0.0);
    CHECK(r.fidelity_rate() == doctest::Approx(static_cast<double>(r.faithful) / 2.0));
}
