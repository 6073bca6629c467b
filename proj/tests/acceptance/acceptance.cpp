// Acceptance run: prints one PASS/FAIL line per criterion.
// Usage: gaitxai_acceptance [criterion numbers...] [--expect-fail 4,5]
// Exits 0 when the set of failing criteria equals the --expect-fail set (empty by default).

#include "gaitxai/api.hpp"
#include "gaitxai/checkpoint.hpp"
#include "gaitxai/errors.hpp"
#include "gaitxai/evaluation.hpp"
#include "gaitxai/group_stats.hpp"
#include "gaitxai/network.hpp"
#include "gaitxai/pipeline.hpp"
#include "gaitxai/relevance.hpp"
#include "gaitxai/server.hpp"
#include "gaitxai/synthetic.hpp"
#include "support/builders.hpp"
#include "support/gradcheck.hpp"
#include "support/oracles.hpp"

#include "CLI11.hpp"
#include "httplib.h"
#include "json.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

using namespace gaitxai;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// Shared cohort for criteria 3, 4, 5 and 9: default generator settings, 8 extra review patients.
constexpr std::uint64_t kCohortSeed = 2024;
constexpr std::uint64_t kTrainSeed = 7;

SyntheticConfig cohort_config(bool shuffled) {
    SyntheticConfig cfg;
    cfg.seed = kCohortSeed;
    cfg.reviewPatientsPerClass = 2;
    cfg.shuffleLabels = shuffled;
    return cfg;
}

struct LearningRun {
    Dataset dataset;
    ServedState state;  // real labels, trained through the pipeline
    AnnotatedSamples annotated;
    double realAccuracy = 0.0;
    double shuffledAccuracy = 0.0;
    double seconds = 0.0;
};

const LearningRun& learning_run() {
    static const LearningRun run = [] {
        LearningRun r;
        Stopwatch clock;
        r.dataset = generate_synthetic_dataset(cohort_config(false));
        PipelineOptions opts;
        opts.train.seed = kTrainSeed;
        opts.onEpoch = [](const EpochStats& e) {
            if (e.epoch % 10 == 0)
                std::cerr << "  real labels: epoch " << e.epoch << " val_acc " << e.validationAccuracy << "\n";
        };
        r.state = run_pipeline(r.dataset, opts);
        r.annotated = annotated_samples(r.dataset);
        r.realAccuracy = evaluate(*r.state.params, r.annotated.samples, r.state.split.validation).accuracy;

        const auto shuffled = annotated_samples(generate_synthetic_dataset(cohort_config(true)));
        TrainConfig tc;
        tc.seed = kTrainSeed;
        const auto control = train(shuffled.samples, tc, ModelConfig{}, [](const EpochStats& e) {
            if (e.epoch % 10 == 0)
                std::cerr << "  shuffled labels: epoch " << e.epoch << " val_acc " << e.validationAccuracy << "\n";
        });
        r.shuffledAccuracy = evaluate(control.params, shuffled.samples, control.split.validation).accuracy;
        r.seconds = clock.seconds();
        return r;
    }();
    return run;
}

const ExplanationReport& explanation_report() {
    static const ExplanationReport report = [] {
        const auto& r = learning_run();
        return explanation_metrics(*r.state.params, r.annotated.samples, r.state.split.train, r.state.split.validation);
    }();
    return report;
}

// Occlusion relevance on the same model, legs and reference input: the target logit drop when a
// 7-point window is replaced by the reference. It separates problems in the motif masks or the
// scoring from limits of Grad-CAM itself, and is reported next to criteria 4 and 5.
struct OcclusionReport {
    std::array<std::size_t, kNumClasses> correct{}, localized{};
    std::size_t faithful = 0, total = 0;
};

const OcclusionReport& occlusion_report() {
    static const OcclusionReport report = [] {
        constexpr std::size_t kWindow = 7;
        const auto& r = learning_run();
        const auto& params = *r.state.params;
        OcclusionReport rep;
        for (auto i : r.state.split.validation) {
            const auto& s = r.annotated.samples[i];
            const auto k = index_of(s.label);
            const auto base = forward(params, s.x);
            if (predict(params, s.x).gaitClass != s.label) continue;
            const auto ref = reference_input(r.annotated.samples, r.state.split.train, s.label);
            std::vector<double> rel(s.x.size(), 0.0);
            for (std::size_t w = 0; w < s.x.size(); w += kWindow) {
                auto x = s.x;
                const auto end = std::min(s.x.size(), w + kWindow);
                for (auto j = w; j < end; ++j) x[j] = ref[j];
                const double drop = std::max(0.0, base.logits[k] - forward(params, x).logits[k]);
                for (auto j = w; j < end; ++j) rel[j] = drop;
            }
            ++rep.total;
            ++rep.correct[k];
            if (localization_score(rel, s.label).localized()) ++rep.localized[k];
            if (perturbation_score(params, s.x, rel, ref, s.label).faithful()) ++rep.faithful;
        }
        return rep;
    }();
    return report;
}

// 1 ------------------------------------------------------------------------------------------
Outcome gradient_correctness() {
    Stopwatch clock;
    ModelConfig cfg;
    cfg.inputLength = 40;
    cfg.featureMaps = 8;
    cfg.fcWidth = 16;
    std::mt19937_64 rng(101);
    const auto params = ModelParams::lecun_normal(cfg, 101);
    const auto batch = testing_support::random_batch(4, cfg.inputLength, rng);
    const auto errors = testing_support::gradient_check(params, batch, 1e-4);
    double worst = 0.0;
    std::string worstName;
    for (const auto& e : errors) {
        if (e.maxRelative >= worst) {
            worst = e.maxRelative;
            worstName = e.name;
        }
    }
    const double secs = clock.seconds();
    return {worst < 1e-4 && secs < 60.0,
            fmt("max relative error %.2e (%s) over %zu tensors, %.1f s", worst, worstName.c_str(), errors.size(), secs)};
}

// 2 ------------------------------------------------------------------------------------------
Outcome architecture_shape() {
    Stopwatch clock;
    const ModelConfig cfg;
    const bool shapes =
        cfg.conv_lengths() == std::vector<std::size_t>{706, 352, 175, 87} && cfg.flatten_length() == 5568;
    const auto params = ModelParams::lecun_normal(cfg, 202);
    std::mt19937_64 rng(202);
    const auto inputs = testing_support::random_batch(100, cfg.inputLength, rng);
    double worst = 0.0;
    bool lengths = true;
    for (const auto& s : inputs) {
        const auto cache = forward(params, s.x);
        for (std::size_t l = 0; l < cache.convAct.size(); ++l) lengths = lengths && cache.convAct[l].length == cfg.conv_lengths()[l];
        worst = std::max(worst, std::fabs(std::accumulate(cache.probabilities.begin(), cache.probabilities.end(), 0.0) - 1.0));
    }
    const double secs = clock.seconds();
    return {shapes && lengths && worst <= 1e-9 && secs < 60.0,
            fmt("conv lengths 706/352/175/87, flatten 5568: %s; max |sum p - 1| = %.1e over 100 inputs, %.1f s",
                shapes && lengths ? "yes" : "no", worst, secs)};
}

// 3 ------------------------------------------------------------------------------------------
Outcome learning() {
    const auto& r = learning_run();
    const bool realOk = r.realAccuracy >= 0.95;
    const bool controlOk = std::fabs(r.shuffledAccuracy - 0.25) <= 0.15;
    const bool timeOk = r.seconds < 600.0;
    return {realOk && controlOk && timeOk,
            fmt("held-out accuracy %.3f (>= 0.95), shuffled control %.3f (0.25 +/- 0.15), %zu held-out legs, %.0f s for "
                "both runs (< 600 s)",
                r.realAccuracy, r.shuffledAccuracy, r.state.split.validation.size(), r.seconds)};
}

// 4 ------------------------------------------------------------------------------------------
Outcome localization() {
    const auto& rep = explanation_report();
    bool ok = true;
    std::ostringstream detail;
    for (auto cls : kAllClasses) {
        const auto k = index_of(cls);
        const double rate = rep.localization_rate(cls);
        ok = ok && rep.correct[k] > 0 && rate >= 0.8;
        detail << to_string(cls) << " " << rep.localized[k] << "/" << rep.correct[k] << fmt(" (%.2f)", rate)
               << (k + 1 < kNumClasses ? ", " : "");
    }
    if (!ok) {
        const auto& occ = occlusion_report();
        detail << "; occlusion relevance on the same legs:";
        for (auto cls : kAllClasses)
            detail << " " << occ.localized[index_of(cls)] << "/" << occ.correct[index_of(cls)];
    }
    return {ok, detail.str()};
}

// 5 ------------------------------------------------------------------------------------------
Outcome perturbation_fidelity() {
    const auto& rep = explanation_report();
    const bool ok = rep.totalCorrect > 0 && rep.fidelity_rate() >= 0.8;
    auto detail = fmt("top-decile drop exceeds bottom-decile drop on %zu/%zu correctly classified held-out legs (%.2f)",
                      rep.faithful, rep.totalCorrect, rep.fidelity_rate());
    if (!ok) {
        const auto& occ = occlusion_report();
        detail += fmt("; occlusion relevance on the same legs: %zu/%zu", occ.faithful, occ.total);
    }
    return {ok, detail};
}

// 6 ------------------------------------------------------------------------------------------
Outcome oracle_equivalence() {
    constexpr int kInstances = 1000;
    constexpr double kTol = 1e-10;
    std::mt19937_64 rng(606);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 9);
    auto random_array = [&](double scale, double offset) {
        CycleArray a{};
        for (auto& v : a) v = offset + scale * u(rng);
        return a;
    };
    auto random_scale = [&] { return std::pow(10.0, 3.0 * u(rng)); };
    std::map<std::string, double> worst;
    auto track = [&](const std::string& name, double err) { worst[name] = std::max(worst[name], err); };

    for (int n = 0; n < kInstances; ++n) {
        // Min-max normalization, including constant series.
        const auto raw = pick(rng) == 0 ? CycleArray{} : random_array(random_scale(), 100.0 * u(rng));
        const auto mm = min_max_normalize(GaitCycleSeries(raw, Unit::Degrees));
        const auto want = oracle::min_max(raw);
        for (std::size_t t = 0; t < kCyclePoints; ++t) track("min-max", std::fabs(mm[t] - want[t]));

        // Trial averaging.
        const std::size_t trials = 1 + static_cast<std::size_t>(pick(rng));
        std::vector<GaitCycleSeries> series;
        std::vector<CycleArray> rows;
        for (std::size_t k = 0; k < trials; ++k) {
            rows.push_back(random_array(random_scale(), u(rng)));
            series.emplace_back(rows.back(), Unit::WattPerKg);
        }
        const auto avg = average_trials(series);
        const auto wantAvg = oracle::mean(rows);
        for (std::size_t t = 0; t < kCyclePoints; ++t) track("trial averaging", std::fabs(avg.values()[t] - wantAvg[t]));
    }

    // Group statistics and z-score overview on random cohorts; each instance uses a fresh cohort.
    for (int n = 0; n < kInstances; ++n) {
        const std::size_t legs = 1 + static_cast<std::size_t>(pick(rng) % 6);
        std::vector<PatientRecord> patients;
        for (std::size_t i = 0; i < legs + 1; ++i)
            patients.push_back(testing_support::random_patient(testing_support::patient_id(static_cast<int>(i)), rng, 1));
        std::vector<LabeledLeg> cohort;
        for (std::size_t i = 0; i < legs; ++i) {
            cohort.push_back({&patients[i], Side::Left, GaitClass::JumpGait});
            if (i % 2 == 0) cohort.push_back({&patients[i], Side::Right, GaitClass::JumpGait});
        }
        const auto stats = compute_group_stats(cohort, GaitClass::JumpGait);
        const auto& probe = patients.back();
        const auto z = zscore_overview(probe, stats);
        // Only a few channels per instance keep the oracle cost moderate; the channel rotates.
        for (std::size_t c = static_cast<std::size_t>(n) % 29; c < kNumChannels; c += 7) {
            const auto ch = channel_catalog()[c];
            CycleArray zWant{};
            for (auto s : kBothSides) {
                std::vector<CycleArray> rows;
                for (const auto& l : cohort)
                    if (l.side == s) rows.push_back(l.patient->averaged(s, ch).values());
                const auto m = oracle::mean(rows);
                const auto sd = oracle::population_sd(rows);
                const auto* st = stats.find(ch, s);
                for (std::size_t t = 0; t < kCyclePoints; ++t) {
                    track("group mean/SD", std::max(std::fabs(st->mean[t] - m[t]), std::fabs(st->std[t] - sd[t])));
                    if (sd[t] >= 1e-12)
                        zWant[t] = std::max(zWant[t], std::fabs(probe.averaged(s, ch).values()[t] - m[t]) / sd[t]);
                }
            }
            // z-scores are compared relative to their size: a small SD amplifies rounding in the mean.
            for (std::size_t t = 0; t < kCyclePoints; ++t)
                track("z-score overview", std::fabs(z.at(ch)[t] - zWant[t]) / std::max(1.0, zWant[t]));
        }
        // Asymmetry on the probe patient.
        const auto asym = asymmetry_overview(probe);
        for (const auto& ch : channel_catalog()) {
            const auto want = oracle::asymmetry(probe.averaged(Side::Left, ch).values(), probe.averaged(Side::Right, ch).values());
            for (std::size_t t = 0; t < kCyclePoints; ++t) track("asymmetry overview", std::fabs(asym.at(ch)[t] - want[t]));
        }
    }

    // Overview relevance max.
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int n = 0; n < kInstances; ++n) {
        RelevanceMap left, right;
        left.raw.resize(kFeatureLength);
        right.raw.resize(kFeatureLength);
        for (auto& v : left.raw) v = unit(rng);
        for (auto& v : right.raw) v = unit(rng);
        right.side = Side::Right;
        const auto ov = overview_relevance(left, right);
        for (const auto& ch : channel_catalog()) {
            const auto m = model_index(ch);
            for (std::size_t t = 0; t < kCyclePoints; ++t) {
                const double want = m ? std::max(left.raw[*m * 101 + t], right.raw[*m * 101 + t]) : 0.0;
                track("overview relevance max", std::fabs(ov.at(ch)[t] - want));
            }
        }
    }

    bool ok = worst.size() == 6;
    std::ostringstream detail;
    for (const auto& [name, err] : worst) {
        ok = ok && err <= kTol;
        detail << name << fmt(" %.1e", err) << "; ";
    }
    detail << kInstances << " instances each, tolerance 1e-10";
    return {ok, detail.str()};
}

// 7 ------------------------------------------------------------------------------------------
Outcome binning_exactness() {
    bool ok = bin_relevance(1.0 / 3.0) == RelevanceLevel::Middle && bin_relevance(2.0 / 3.0) == RelevanceLevel::High &&
              bin_relevance(std::nextafter(1.0 / 3.0, 0.0)) == RelevanceLevel::Low &&
              bin_relevance(std::nextafter(2.0 / 3.0, 0.0)) == RelevanceLevel::Middle &&
              bin_relevance(0.0) == RelevanceLevel::Low && bin_relevance(1.0) == RelevanceLevel::High;
    bool throws = false;
    try {
        bin_relevance(1.5);
    } catch (const InvalidInput&) {
        throws = true;
    }
    std::mt19937_64 rng(707);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> samples(10000);
    for (auto& v : samples) v = u(rng);
    std::sort(samples.begin(), samples.end());
    std::size_t violations = 0;
    for (std::size_t i = 1; i < samples.size(); ++i)
        if (static_cast<int>(bin_relevance(samples[i])) < static_cast<int>(bin_relevance(samples[i - 1]))) ++violations;
    return {ok && throws && violations == 0,
            fmt("boundaries 1/3 -> middle, 2/3 -> high: %s; %zu monotonicity violations over 10000 samples",
                ok ? "yes" : "no", violations)};
}

// 8 ------------------------------------------------------------------------------------------
Outcome determinism_and_persistence() {
    const auto dir = fs::temp_directory_path() / "gaitxai_acceptance";
    fs::create_directories(dir);
    SyntheticConfig scfg;
    scfg.legsPerClass = 8;
    scfg.trialsPerLeg = 2;
    scfg.reviewPatientsPerClass = 1;
    scfg.seed = 808;
    const auto ds = generate_synthetic_dataset(scfg);

    // Same seed twice on the default architecture (3 epochs keep this fast).
    PipelineOptions opts;
    opts.train.seed = 808;
    opts.train.epochs = 3;
    const auto a = run_pipeline(ds, opts);
    const auto b = run_pipeline(ds, opts);
    const Checkpoint ca{*a.params, opts.train, a.history, a.split};
    const Checkpoint cb{*b.params, opts.train, b.history, b.split};
    const bool sameCheckpoint = encode_checkpoint(ca) == encode_checkpoint(cb);
    const bool sameHash = snapshot_hash(a) == snapshot_hash(b);

    // Round trips.
    save_dataset(ds, dir / "ds.json");
    const bool datasetExact = load_dataset(dir / "ds.json") == ds;
    save_checkpoint(ca, dir / "model.ckpt");
    const auto loaded = load_checkpoint(dir / "model.ckpt");
    const bool checkpointExact = encode_checkpoint(loaded) == encode_checkpoint(ca) && loaded.params == ca.params;

    // Override log replay.
    const auto logPath = dir / "overrides.jsonl";
    fs::remove(logPath);
    ApiService api(a);
    api.set_override_sink([&](const ClassificationOverride& o) { append_override(logPath, o); });
    const auto& ps = a.dataset.patients;
    const std::vector<std::tuple<std::string, std::string, std::string>> posts{
        {ps[0].id, "left", "CrouchGait"}, {ps.back().id, "right", "JumpGait"}, {ps[0].id, "left", "ApparentEquinus"}};
    for (const auto& [id, side, cls] : posts)
        api.handle({"POST", "/patients/" + id + "/sides/" + side + "/classification", {}, json{{"class", cls}}.dump()});
    auto replayedDs = ds;
    const auto log = load_override_log(logPath);
    replayedDs.overrides.insert(replayedDs.overrides.end(), log.begin(), log.end());
    PipelineOptions reuse;
    reuse.pretrained = a.params;
    ApiService restarted(run_pipeline(replayedDs, reuse));
    const bool replayOk = log.size() == posts.size() && restarted.confirmed() == api.confirmed() &&
                          restarted.handle({"GET", "/patients", {}, ""}).body == api.handle({"GET", "/patients", {}, ""}).body;

    return {sameCheckpoint && sameHash && datasetExact && checkpointExact && replayOk,
            fmt("identical checkpoint bytes %s, snapshot hash %s (%016llx); dataset round trip %s; checkpoint round trip "
                "%s; override replay %s",
                sameCheckpoint ? "yes" : "no", sameHash ? "equal" : "differs",
                static_cast<unsigned long long>(snapshot_hash(a)), datasetExact ? "exact" : "differs",
                checkpointExact ? "exact" : "differs", replayOk ? "reproduces confirmed classes" : "differs")};
}

// 9 ------------------------------------------------------------------------------------------
Outcome api_contract() {
    const auto& run = learning_run();
    ApiService api(run.state);
    HttpServer server(api, ServerOptions{"127.0.0.1", 0, std::nullopt});
    const int port = server.start();
    httplib::Client cli("127.0.0.1", port);
    std::vector<std::string> problems;
    auto expect = [&](bool cond, const std::string& what) {
        if (!cond) problems.push_back(what);
    };

    // The eight review patients are the ones without annotations.
    std::vector<const PatientRecord*> review;
    for (const auto& p : run.dataset.patients)
        if (!run.dataset.groundTruth.contains({p.id, Side::Left}) && !run.dataset.groundTruth.contains({p.id, Side::Right}))
            review.push_back(&p);
    expect(review.size() == 8, "expected 8 review patients");

    const auto list = cli.Get("/patients");
    expect(list && list->status == 200, "GET /patients");
    std::size_t listed = 0, reviewCorrect = 0;
    if (list && list->status == 200) {
        const auto doc = json::parse(list->body);
        listed = doc.size();
        expect(listed == run.dataset.patients.size(), "patient count");
        for (std::size_t i = 0; i < review.size(); ++i) {
            const auto it = std::find_if(doc.begin(), doc.end(), [&](const json& e) { return e["id"] == review[i]->id; });
            expect(it != doc.end(), "review patient listed");
            if (it == doc.end()) continue;
            expect((*it)["sides"]["left"]["confirmed"].is_null(), "review patient unconfirmed");
            // Review patients are generated in class order, both legs affected.
            const auto truth = to_string(kAllClasses[i % 4]);
            for (const char* s : {"left", "right"})
                if ((*it)["sides"][s]["predicted"]["class"] == truth) ++reviewCorrect;
        }
    }

    const auto& target = *review.front();
    const auto rel = cli.Get("/patients/" + target.id + "/sides/left/relevance");
    expect(rel && rel->status == 200, "GET relevance");
    if (rel && rel->status == 200) {
        const auto doc = json::parse(rel->body);
        expect(doc["channels"].size() == 14, "14 relevance rows");
        for (const auto& row : doc["channels"]) {
            expect(row["values"].size() == 101, "101 values per row");
            for (const auto& v : row["values"]) expect(v.get<double>() >= 0.0 && v.get<double>() <= 1.0, "relevance in [0,1]");
        }
    }

    const auto before = json::parse(cli.Get("/groups/CrouchGait/stats")->body)["legs"].get<std::size_t>();
    const auto posted = cli.Post("/patients/" + target.id + "/sides/left/classification",
                                 R"({"class":"CrouchGait","note":"reviewed"})", "application/json");
    expect(posted && posted->status == 200, "POST override");
    const auto after = cli.Get("/patients");
    bool readYourWrite = false;
    if (after && after->status == 200) {
        const auto doc = json::parse(after->body);
        const auto it = std::find_if(doc.begin(), doc.end(), [&](const json& e) { return e["id"] == target.id; });
        readYourWrite = it != doc.end() && (*it)["sides"]["left"]["confirmed"] == "CrouchGait" && (*it)["reviewed"] == true;
    }
    expect(readYourWrite, "read-your-write on /patients");
    const auto detail = cli.Get("/patients/" + target.id);
    expect(detail && json::parse(detail->body)["sides"]["left"]["confirmed"] == "CrouchGait", "read-your-write on detail");
    const auto groupAfter = json::parse(cli.Get("/groups/CrouchGait/stats")->body)["legs"].get<std::size_t>();
    expect(groupAfter == before + 1, "group stats include the new label");
    server.stop();

    std::string text = fmt("%zu patients listed, relevance 14 x 101 in [0,1], override visible on next read; review "
                           "legs predicted correctly %zu/16",
                           listed, reviewCorrect);
    for (const auto& p : problems) text += "; FAILED: " + p;
    return {problems.empty(), text};
}

struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "gradient correctness", gradient_correctness},
        {2, "architecture shape", architecture_shape},
        {3, "learning", learning},
        {4, "explanation localization", localization},
        {5, "perturbation fidelity", perturbation_fidelity},
        {6, "oracle equivalence", oracle_equivalence},
        {7, "binning exactness", binning_exactness},
        {8, "determinism and persistence", determinism_and_persistence},
        {9, "API contract", api_contract},
    };
    CLI::App app{"Runs the acceptance criteria and prints one PASS/FAIL line each"};
    std::vector<int> selectedList, expectedList;
    app.add_option("criteria", selectedList, "Criterion numbers to run (default: all)")->check(CLI::Range(1, 9));
    app.add_option("--expect-fail", expectedList,
                   "Criteria known to fail; the exit code is 0 only if exactly these fail")
        ->delimiter(',')
        ->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);
    const std::set<int> selected(selectedList.begin(), selectedList.end());
    std::set<int> expected, failed;

    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.contains(c.number)) continue;
        if (expectedList.end() != std::find(expectedList.begin(), expectedList.end(), c.number)) expected.insert(c.number);
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) failed.insert(c.number);
        std::cout << "criterion " << c.number << " " << (o.pass ? "PASS" : "FAIL") << " " << c.name << ": " << o.detail
                  << std::endl;
    }
    auto list = [](const std::set<int>& s) {
        std::string out;
        for (int n : s) out += (out.empty() ? "" : ",") + std::to_string(n);
        return out.empty() ? std::string("none") : out;
    };
    std::cout << "failed: " << list(failed) << "; expected to fail: " << list(expected) << std::endl;
    return failed == expected ? 0 : 1;
}
