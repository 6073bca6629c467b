#include "cli.hpp"

#include "gaitxai/api.hpp"
#include "gaitxai/checkpoint.hpp"
#include "gaitxai/errors.hpp"
#include "gaitxai/evaluation.hpp"
#include "gaitxai/features.hpp"
#include "gaitxai/grad_cam.hpp"
#include "gaitxai/json_codec.hpp"
#include "gaitxai/network.hpp"
#include "gaitxai/overview_plot.hpp"
#include "gaitxai/pipeline.hpp"
#include "gaitxai/server.hpp"
#include "gaitxai/synthetic.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace gaitxai::cli {

namespace {

using nlohmann::json;

struct Settings {
    SyntheticConfig synthetic;
    TrainConfig train;
    ModelConfig model;
};

template <typename T>
void read_field(const json& obj, const char* name, T& target) {
    if (obj.contains(name)) target = obj.at(name).get<T>();
}

// Optional JSON file with "synthetic", "train" and "model" sections; missing keys keep defaults.
Settings load_settings(const std::string& path) {
    Settings s;
    if (path.empty()) return s;
    std::ifstream in(path);
    if (!in) throw Error("cannot open config " + path);
    json doc;
    try {
        doc = json::parse(in);
        if (doc.contains("synthetic")) {
            const auto& j = doc.at("synthetic");
            read_field(j, "legsPerClass", s.synthetic.legsPerClass);
            read_field(j, "trialsPerLeg", s.synthetic.trialsPerLeg);
            read_field(j, "noiseStd", s.synthetic.noiseStd);
            read_field(j, "motifStrength", s.synthetic.motifStrength);
            read_field(j, "reviewPatientsPerClass", s.synthetic.reviewPatientsPerClass);
            read_field(j, "shuffleLabels", s.synthetic.shuffleLabels);
            read_field(j, "seed", s.synthetic.seed);
        }
        if (doc.contains("train")) {
            const auto& j = doc.at("train");
            read_field(j, "learningRate", s.train.learningRate);
            read_field(j, "adamBeta1", s.train.adamBeta1);
            read_field(j, "adamBeta2", s.train.adamBeta2);
            read_field(j, "adamEpsilon", s.train.adamEpsilon);
            read_field(j, "batchSize", s.train.batchSize);
            read_field(j, "epochs", s.train.epochs);
            read_field(j, "validationFraction", s.train.validationFraction);
            read_field(j, "seed", s.train.seed);
        }
        if (doc.contains("model")) {
            const auto& j = doc.at("model");
            read_field(j, "convLayers", s.model.convLayers);
            read_field(j, "featureMaps", s.model.featureMaps);
            read_field(j, "filterSize", s.model.filterSize);
            read_field(j, "stride", s.model.stride);
            read_field(j, "fcWidth", s.model.fcWidth);
            read_field(j, "dropoutRate", s.model.dropoutRate);
        }
    } catch (const json::exception& e) {
        throw Error("invalid config " + path + ": " + e.what());
    }
    return s;
}

struct Common {
    std::uint64_t seed = 0;
    bool seedGiven = false;
    std::string config;
    std::string out;
};

void add_common(CLI::App* cmd, Common& c, bool outRequired, const std::string& outHelp) {
    cmd->add_option("--seed", c.seed, "Master random seed")->each([&c](const std::string&) { c.seedGiven = true; });
    cmd->add_option("--config", c.config, "JSON settings file (synthetic/train/model sections)")->check(CLI::ExistingFile);
    auto* out = cmd->add_option("--out", c.out, outHelp);
    if (outRequired) out->required();
}

std::string fmt(double v, int digits = 4) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open " + path + " for writing");
    f << text;
    if (!f) throw Error("failed writing " + path);
}

json history_json(const std::vector<EpochStats>& history) {
    json arr = json::array();
    for (const auto& e : history) {
        arr.push_back(json{{"epoch", e.epoch},
                           {"trainLoss", e.trainLoss},
                           {"trainAccuracy", e.trainAccuracy},
                           {"validationLoss", e.validationLoss},
                           {"validationAccuracy", e.validationAccuracy}});
    }
    return arr;
}

int cmd_synth(const Common& c, Settings s, std::ostream& out) {
    if (c.seedGiven) s.synthetic.seed = c.seed;
    const auto ds = generate_synthetic_dataset(s.synthetic);
    save_dataset(ds, c.out);
    out << "wrote " << ds.patients.size() << " patients (" << ds.groundTruth.size() << " annotated legs) to " << c.out
        << "\n";
    return 0;
}

int cmd_train(const Common& c, Settings s, const std::string& data, const std::string& reportPath,
              std::ostream& out) {
    if (c.seedGiven) s.train.seed = c.seed;
    const auto ds = load_dataset(data);
    const auto annotated = annotated_samples(ds);
    out << "training on " << annotated.samples.size() << " annotated legs\n";
    auto result = train(annotated.samples, s.train, s.model, [&out](const EpochStats& e) {
        out << "epoch " << std::setw(3) << e.epoch << "  loss " << fmt(e.trainLoss) << "  acc " << fmt(e.trainAccuracy)
            << "  val_loss " << fmt(e.validationLoss) << "  val_acc " << fmt(e.validationAccuracy) << "\n" << std::flush;
    });
    Checkpoint ckpt{result.params, s.train, result.history, result.split};
    save_checkpoint(ckpt, c.out);
    const auto report = json{{"trainLegs", result.split.train.size()},
                             {"validationLegs", result.split.validation.size()},
                             {"seed", s.train.seed},
                             {"epochs", s.train.epochs},
                             {"history", history_json(result.history)}};
    const auto path = reportPath.empty() ? c.out + ".metrics.json" : reportPath;
    write_text(path, report.dump(2) + "\n");
    out << "wrote checkpoint " << c.out << " and metrics " << path << "\n";
    return 0;
}

int cmd_eval(const Common& c, const std::string& data, const std::string& model, bool all, std::ostream& out) {
    const auto ds = load_dataset(data);
    const auto ckpt = load_checkpoint(model);
    const auto annotated = annotated_samples(ds);
    const auto n = annotated.samples.size();
    std::vector<std::size_t> evalIdx, trainIdx;
    if (all) {
        for (std::size_t i = 0; i < n; ++i) evalIdx.push_back(i);
        trainIdx = evalIdx;
    } else {
        evalIdx = ckpt.split.validation;
        trainIdx = ckpt.split.train;
        for (auto i : evalIdx)
            if (i >= n) throw InvalidInput("checkpoint split does not fit this dataset; use --all");
        for (auto i : trainIdx)
            if (i >= n) throw InvalidInput("checkpoint split does not fit this dataset; use --all");
    }
    if (evalIdx.empty()) throw InvalidInput("nothing to evaluate");

    const auto report = classify(ckpt.params, annotated.samples, evalIdx);
    const auto& cm = report.confusion;
    out << "accuracy " << fmt(cm.accuracy()) << " on " << cm.total() << (all ? " annotated" : " held-out") << " legs\n";
    out << "confusion matrix (rows: true class, columns: predicted)\n";
    out << std::setw(16) << "";
    for (auto cls : kAllClasses) out << std::setw(16) << to_string(cls);
    out << "\n";
    json cmJson = json::array();
    for (auto t : kAllClasses) {
        out << std::setw(16) << to_string(t);
        json row = json::array();
        for (auto p : kAllClasses) {
            out << std::setw(16) << cm.counts[index_of(t)][index_of(p)];
            row.push_back(cm.counts[index_of(t)][index_of(p)]);
        }
        out << "\n";
        cmJson.push_back(row);
    }

    const auto expl = explanation_metrics(ckpt.params, annotated.samples, trainIdx, evalIdx);
    json loc = json::object();
    for (auto cls : kAllClasses) {
        const auto k = index_of(cls);
        out << "localization " << std::left << std::setw(16) << to_string(cls) << std::right
            << fmt(expl.localization_rate(cls)) << " (" << expl.localized[k] << "/" << expl.correct[k] << ")\n";
        loc[std::string(to_string(cls))] = json{{"rate", expl.localization_rate(cls)},
                                                {"localized", expl.localized[k]},
                                                {"correct", expl.correct[k]}};
    }
    out << "perturbation fidelity " << fmt(expl.fidelity_rate()) << " (" << expl.faithful << "/" << expl.totalCorrect
        << ")\n";
    if (!c.out.empty()) {
        const json doc{{"accuracy", cm.accuracy()},
                       {"legs", cm.total()},
                       {"classes", {"TrueEquinus", "JumpGait", "ApparentEquinus", "CrouchGait"}},
                       {"confusion", cmJson},
                       {"localization", loc},
                       {"fidelity", json{{"rate", expl.fidelity_rate()},
                                         {"faithful", expl.faithful},
                                         {"correct", expl.totalCorrect}}}};
        write_text(c.out, doc.dump(2) + "\n");
    }
    return 0;
}

int cmd_explain(const Common& c, const std::string& data, const std::string& model, const std::string& patientId,
                const std::string& sideName, const std::string& className, std::string plotPath, std::ostream& out) {
    const auto ds = load_dataset(data);
    const auto ckpt = load_checkpoint(model);
    const auto* p = ds.find(patientId);
    if (p == nullptr) throw NotFound("unknown patient " + patientId);
    const auto side = parse_side(sideName);
    if (!side) throw InvalidInput("side must be left or right");
    if (!p->has_side(*side)) throw MissingSide("patient " + patientId + " has no " + sideName + " leg");

    std::map<Side, RelevanceMap> maps;
    GaitClass target{};
    for (const auto& [s, sd] : p->perSide) {
        const auto fv = build_feature_vector(*p, s);
        const auto pred = predict(ckpt.params, fv);
        auto cls = pred.gaitClass;
        if (s == *side) {
            if (!className.empty()) {
                const auto parsed = parse_gait_class(className);
                if (!parsed) throw InvalidInput("unknown gait class '" + className + "'");
                cls = *parsed;
            }
            target = cls;
            out << "predicted " << to_string(pred.gaitClass) << " (p=" << fmt(pred.probabilities[index_of(pred.gaitClass)])
                << "), explaining " << to_string(cls) << "\n";
        }
        maps.emplace(s, grad_cam(ckpt.params, fv, cls));
    }
    const auto& own = maps.at(*side);
    write_text(c.out, jsonio::relevance_document(own).dump(2) + "\n");

    const auto other = *side == Side::Left ? Side::Right : Side::Left;
    const auto& otherMap = maps.contains(other) ? maps.at(other) : own;
    const auto rows = *side == Side::Left ? overview_relevance(own, otherMap) : overview_relevance(otherMap, own);
    if (plotPath.empty()) plotPath = std::filesystem::path(c.out).replace_extension(".svg").string();
    write_text(plotPath, render_overview_svg(rows, 1.0, patientId + " relevance (" + std::string(to_string(target)) + ")"));
    out << "wrote " << c.out << " and " << plotPath << "\n";
    return 0;
}

int cmd_serve(const Common& c, Settings s, const std::string& data, const std::string& model, const ServerOptions& opts,
              std::ostream& out) {
    if (c.seedGiven) s.train.seed = c.seed;
    auto ds = load_dataset(data);
    if (!c.out.empty()) {
        const auto log = load_override_log(c.out);
        ds.overrides.insert(ds.overrides.end(), log.begin(), log.end());
        validate(ds);
        if (!log.empty()) out << "replayed " << log.size() << " overrides from " << c.out << "\n";
    }
    PipelineOptions popts;
    popts.train = s.train;
    popts.model = s.model;
    if (!model.empty()) {
        popts.pretrained = load_checkpoint(model).params;
    } else {
        out << "no checkpoint given; training on the annotated legs\n";
        popts.onEpoch = [&out](const EpochStats& e) {
            out << "epoch " << e.epoch << " val_acc " << fmt(e.validationAccuracy) << "\n" << std::flush;
        };
    }
    ApiService api(run_pipeline(ds, popts));
    if (!c.out.empty()) {
        const std::string path = c.out;
        api.set_override_sink([path](const ClassificationOverride& o) { append_override(path, o); });
    }
    HttpServer server(api, opts);
    const int port = server.bind();
    out << "serving " << ds.patients.size() << " patients on http://" << opts.host << ":" << port << "\n" << std::flush;
    server.run();
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gait pattern classification with Grad-CAM explanations", "gaitxai"};
    app.require_subcommand(1);

    Common common;
    std::string data, model, reportPath, patient, side = "left", className, plot, staticDir;
    std::size_t legsPerClass = 0, trialsPerLeg = 0, reviewPerClass = 0, epochs = 0;
    double noise = -1.0, motif = -1.0;
    bool shuffle = false, all = false;
    ServerOptions serverOpts;

    auto* synth = app.add_subcommand("synth", "Generate a synthetic cohort dataset file");
    add_common(synth, common, true, "Dataset file to write");
    synth->add_option("--legs-per-class", legsPerClass, "Annotated legs per gait class")->check(CLI::Range(2, 100000));
    synth->add_option("--trials-per-leg", trialsPerLeg, "Trials per leg")->check(CLI::Range(1, 1000));
    synth->add_option("--noise", noise, "Per-trial noise SD as a fraction of channel amplitude")->check(CLI::NonNegativeNumber);
    synth->add_option("--motif-strength", motif, "Motif peak as a fraction of channel amplitude")->check(CLI::NonNegativeNumber);
    synth->add_option("--review-per-class", reviewPerClass, "Unannotated review patients per class");
    synth->add_flag("--shuffle-labels", shuffle, "Randomly permute the annotations");

    auto* trainCmd = app.add_subcommand("train", "Train a classifier on the annotated legs of a dataset");
    add_common(trainCmd, common, true, "Checkpoint file to write");
    trainCmd->add_option("--data", data, "Dataset file")->required()->check(CLI::ExistingFile);
    trainCmd->add_option("--epochs", epochs, "Override the number of epochs")->check(CLI::Range(1, 100000));
    trainCmd->add_option("--report", reportPath, "Metrics report (default: <out>.metrics.json)");

    auto* evalCmd = app.add_subcommand("eval", "Accuracy, confusion matrix and explanation fidelity");
    add_common(evalCmd, common, false, "Optional JSON report");
    evalCmd->add_option("--data", data, "Dataset file")->required()->check(CLI::ExistingFile);
    evalCmd->add_option("--model", model, "Checkpoint file")->required()->check(CLI::ExistingFile);
    evalCmd->add_flag("--all", all, "Evaluate every annotated leg instead of the held-out split");

    auto* explainCmd = app.add_subcommand("explain", "Relevance export and overview plot for one leg");
    add_common(explainCmd, common, true, "Relevance JSON to write");
    explainCmd->add_option("--data", data, "Dataset file")->required()->check(CLI::ExistingFile);
    explainCmd->add_option("--model", model, "Checkpoint file")->required()->check(CLI::ExistingFile);
    explainCmd->add_option("--patient", patient, "Patient id")->required();
    explainCmd->add_option("--side", side, "left or right")->check(CLI::IsMember({"left", "right"}));
    explainCmd->add_option("--class", className, "Explain this class instead of the prediction");
    explainCmd->add_option("--plot", plot, "Overview SVG (default: <out> with .svg extension)");

    auto* serveCmd = app.add_subcommand("serve", "Run the pipeline and serve the HTTP API");
    add_common(serveCmd, common, false, "Override log (JSON lines, replayed at startup and appended to)");
    serveCmd->add_option("--data", data, "Dataset file")->required()->check(CLI::ExistingFile);
    serveCmd->add_option("--model", model, "Checkpoint file (trains from scratch when omitted)")->check(CLI::ExistingFile);
    serveCmd->add_option("--host", serverOpts.host, "Bind address");
    serveCmd->add_option("--port", serverOpts.port, "Port (0 = ephemeral)")->check(CLI::Range(0, 65535));
    serveCmd->add_option("--static", staticDir, "Directory served under /ui/")->check(CLI::ExistingDirectory);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return 2;
    }

    try {
        auto settings = load_settings(common.config);
        if (synth->parsed()) {
            if (legsPerClass) settings.synthetic.legsPerClass = legsPerClass;
            if (trialsPerLeg) settings.synthetic.trialsPerLeg = trialsPerLeg;
            if (noise >= 0.0) settings.synthetic.noiseStd = noise;
            if (motif >= 0.0) settings.synthetic.motifStrength = motif;
            if (synth->count("--review-per-class")) settings.synthetic.reviewPatientsPerClass = reviewPerClass;
            if (shuffle) settings.synthetic.shuffleLabels = true;
            return cmd_synth(common, settings, out);
        }
        if (epochs) settings.train.epochs = epochs;
        if (trainCmd->parsed()) return cmd_train(common, settings, data, reportPath, out);
        if (evalCmd->parsed()) return cmd_eval(common, data, model, all, out);
        if (explainCmd->parsed()) return cmd_explain(common, data, model, patient, side, className, plot, out);
        if (serveCmd->parsed()) {
            if (!staticDir.empty()) serverOpts.staticDir = staticDir;
            return cmd_serve(common, settings, data, model, serverOpts, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace gaitxai::cli
