#include "gaitxai/dataset.hpp"

#include "gaitxai/errors.hpp"
#include "gaitxai/json_codec.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace gaitxai {

using gaitxai::jsonio::Cursor;
using nlohmann::json;

namespace {

constexpr std::string_view kFormatName = "gaitxai-dataset";

json encode_side(const SideData& sd) {
    json channels = json::object();
    for (const auto& [c, avg] : sd.averaged) {
        json trials = json::array();
        for (const auto& t : sd.trials) {
            const auto it = t.find(c);
            if (it != t.end()) trials.push_back(jsonio::encode(it->second.values()));
        }
        channels[key(c)] = json{{"unit", to_string(avg.unit())}, {"averaged", jsonio::encode(avg.values())}, {"trials", trials}};
    }
    return json{{"events", jsonio::encode(sd.events)}, {"channels", channels}};
}

SideData decode_side(const Cursor& cur) {
    SideData sd;
    sd.events = cur.at("events").events();
    const auto channels = cur.at("channels");
    std::size_t nTrials = 0;
    std::map<ChannelId, std::vector<CycleArray>> trialRows;
    for (const auto& [k, v] : channels.object()) {
        const Cursor ch(v, channels.path() + "/" + k);
        const auto id = parse_channel_key(k);
        if (!id) ch.fail("unknown channel key");
        const auto unitName = ch.at("unit").string();
        const auto unit = parse_unit(unitName);
        if (!unit) ch.at("unit").fail("unknown unit '" + unitName + "'");
        if (*unit != unit_of(*id)) ch.at("unit").fail("unit does not match the channel");
        sd.averaged.emplace(*id, GaitCycleSeries(ch.at("averaged").cycle(), *unit));
        const auto trials = ch.at("trials");
        auto& rows = trialRows[*id];
        for (std::size_t i = 0; i < trials.array_size(); ++i) rows.push_back(trials.at(i).cycle());
        if (!rows.empty()) {
            if (nTrials == 0) nTrials = rows.size();
            if (rows.size() != nTrials) trials.fail("all channels must carry the same number of trials");
        }
    }
    sd.trials.resize(nTrials);
    for (const auto& [c, rows] : trialRows) {
        for (std::size_t t = 0; t < rows.size(); ++t) sd.trials[t].emplace(c, GaitCycleSeries(rows[t], unit_of(c)));
    }
    return sd;
}

json encode_override(const ClassificationOverride& o) {
    json j{{"patientId", o.patientId}, {"side", to_string(o.side)}, {"class", to_string(o.chosenClass)},
           {"timestamp", o.timestamp}};
    if (o.note) j["note"] = *o.note;
    return j;
}

ClassificationOverride decode_override(const Cursor& cur) {
    ClassificationOverride o;
    o.patientId = cur.at("patientId").string();
    o.side = cur.at("side").side();
    o.chosenClass = cur.at("class").gait_class();
    o.timestamp = cur.at("timestamp").string();
    if (cur.has("note") && !cur.at("note").value().is_null()) o.note = cur.at("note").string();
    return o;
}

}  // namespace

const PatientRecord* Dataset::find(const std::string& id) const {
    for (const auto& p : patients) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

void validate(const Dataset& ds) {
    std::set<std::string> ids;
    for (const auto& p : ds.patients) {
        validate(p);
        if (!ids.insert(p.id).second) throw InvalidInput("duplicate patient id " + p.id);
    }
    for (const auto& [leg, cls] : ds.groundTruth) {
        const auto* p = ds.find(leg.first);
        if (p == nullptr) throw InvalidInput("ground truth refers to unknown patient " + leg.first);
        if (!p->has_side(leg.second))
            throw InvalidInput("ground truth refers to missing side of patient " + leg.first);
    }
    for (const auto& o : ds.overrides) {
        const auto* p = ds.find(o.patientId);
        if (p == nullptr || !p->has_side(o.side)) throw InvalidInput("override refers to unknown leg " + o.patientId);
    }
}

std::map<LegKey, GaitClass> replay_overrides(const std::vector<ClassificationOverride>& log) {
    std::map<LegKey, GaitClass> out;
    for (const auto& o : log) out[{o.patientId, o.side}] = o.chosenClass;
    return out;
}

std::optional<GaitClass> effective_label(const Dataset& ds, const LegKey& leg) {
    for (auto it = ds.overrides.rbegin(); it != ds.overrides.rend(); ++it) {
        if (it->patientId == leg.first && it->side == leg.second) return it->chosenClass;
    }
    const auto gt = ds.groundTruth.find(leg);
    if (gt != ds.groundTruth.end()) return gt->second;
    return std::nullopt;
}

std::string dataset_to_json(const Dataset& ds) {
    json catalogChannels = json::array();
    for (const auto& c : channel_catalog()) {
        catalogChannels.push_back(json{{"key", key(c)}, {"unit", to_string(unit_of(c))}});
    }
    json patients = json::array();
    for (const auto& p : ds.patients) {
        json sides = json::object();
        for (const auto& [s, sd] : p.perSide) sides[std::string(to_string(s))] = encode_side(sd);
        patients.push_back(
            json{{"id", p.id}, {"examDate", p.examDate}, {"walkingSpeed", p.walkingSpeed}, {"perSide", sides}});
    }
    json truth = json::array();
    for (const auto& [leg, cls] : ds.groundTruth)
        truth.push_back(json{{"patientId", leg.first}, {"side", to_string(leg.second)}, {"class", to_string(cls)}});
    json overrides = json::array();
    for (const auto& o : ds.overrides) overrides.push_back(encode_override(o));
    const json doc{{"format", kFormatName},
                   {"version", kDatasetFormatVersion},
                   {"catalog", json{{"version", ds.catalogVersion}, {"channels", catalogChannels}}},
                   {"patients", patients},
                   {"groundTruth", truth},
                   {"overrides", overrides}};
    return doc.dump();
}

Dataset dataset_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw FormatError("/", std::string("malformed JSON: ") + e.what());
    }
    const Cursor root(doc, "");
    if (root.at("format").string() != kFormatName) root.at("format").fail("not a gaitxai dataset");
    if (root.at("version").unsigned_integer() != static_cast<std::uint64_t>(kDatasetFormatVersion))
        root.at("version").fail("unsupported dataset version");

    Dataset ds;
    const auto catalog = root.at("catalog");
    ds.catalogVersion = catalog.at("version").string();
    if (ds.catalogVersion != kCatalogVersion) catalog.at("version").fail("unsupported channel catalog");
    const auto channels = catalog.at("channels");
    if (channels.array_size() != kNumChannels) channels.fail("catalog must list 29 channels");
    for (std::size_t i = 0; i < kNumChannels; ++i) {
        if (channels.at(i).at("key").string() != key(channel_catalog()[i]))
            channels.at(i).at("key").fail("catalog order does not match " + std::string(kCatalogVersion));
    }

    const auto patients = root.at("patients");
    for (std::size_t i = 0; i < patients.array_size(); ++i) {
        const auto pc = patients.at(i);
        PatientRecord p;
        p.id = pc.at("id").string();
        p.examDate = pc.at("examDate").string();
        p.walkingSpeed = pc.at("walkingSpeed").number();
        const auto sides = pc.at("perSide");
        for (const auto& [name, v] : sides.object()) {
            const Cursor sc(v, sides.path() + "/" + name);
            const auto s = parse_side(name);
            if (!s) sc.fail("unknown side");
            p.perSide.emplace(*s, decode_side(sc));
        }
        try {
            validate(p);
        } catch (const Error& e) {
            pc.fail(e.what());
        }
        ds.patients.push_back(std::move(p));
    }
    const auto truth = root.at("groundTruth");
    for (std::size_t i = 0; i < truth.array_size(); ++i) {
        const auto t = truth.at(i);
        ds.groundTruth[{t.at("patientId").string(), t.at("side").side()}] = t.at("class").gait_class();
    }
    const auto overrides = root.at("overrides");
    for (std::size_t i = 0; i < overrides.array_size(); ++i) ds.overrides.push_back(decode_override(overrides.at(i)));
    try {
        validate(ds);
    } catch (const Error& e) {
        root.fail(e.what());
    }
    return ds;
}

void save_dataset(const Dataset& ds, const std::filesystem::path& path) {
    const auto text = dataset_to_json(ds);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + tmp.string() + " for writing");
        out << text;
        if (!out) throw Error("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string override_to_json(const ClassificationOverride& o) { return encode_override(o).dump(); }

void append_override(const std::filesystem::path& path, const ClassificationOverride& o) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw Error("cannot open " + path.string() + " for appending");
    out << override_to_json(o) << '\n';
    out.flush();
    if (!out) throw Error("failed writing " + path.string());
}

std::vector<ClassificationOverride> load_override_log(const std::filesystem::path& path) {
    std::vector<ClassificationOverride> log;
    std::ifstream in(path, std::ios::binary);
    if (!in) return log;
    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty()) continue;
        const std::string where = "/" + std::to_string(lineNo);
        json doc;
        try {
            doc = json::parse(line);
        } catch (const json::parse_error&) {
            throw FormatError(where, "malformed JSON");
        }
        log.push_back(decode_override(Cursor(doc, where)));
    }
    return log;
}

Dataset load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("/", "cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return dataset_from_json(buf.str());
}

}  // namespace gaitxai
