#include "gaitxai/api.hpp"

#include "gaitxai/errors.hpp"
#include "gaitxai/json_codec.hpp"
#include "gaitxai/overview_plot.hpp"
#include "gaitxai/relevance.hpp"

#include <algorithm>
#include <ctime>
#include <regex>
#include <sstream>

namespace gaitxai {

using nlohmann::json;

namespace {

ApiResponse json_response(int status, const json& body) { return {status, body.dump(), "application/json"}; }

ApiResponse error_response(int status, const std::string& message) {
    return json_response(status, json{{"error", message}});
}

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
        if (c == '/') {
            if (!cur.empty()) parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) parts.push_back(cur);
    return parts;
}

json encode_prediction(const Prediction& p) {
    return json{{"class", to_string(p.gaitClass)}, {"probabilities", jsonio::encode(p.probabilities)}};
}

json encode_confirmed(const std::optional<GaitClass>& c) { return c ? json(to_string(*c)) : json(nullptr); }

bool is_timestamp(const std::string& s) {
    static const std::regex re(R"(\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(\.\d+)?(Z|[+-]\d{2}:\d{2}))");
    return std::regex_match(s, re);
}

json encode_rows_with_meta(const std::map<ChannelId, CycleArray>& rows) {
    json arr = json::array();
    for (const auto& c : channel_catalog()) {
        const auto it = rows.find(c);
        arr.push_back(json{{"key", key(c)},
                           {"label", label(c)},
                           {"inModel", in_model(c)},
                           {"values", it == rows.end() ? jsonio::encode(CycleArray{}) : jsonio::encode(it->second)}});
    }
    return arr;
}

// Fixed color-scale ceilings so the same value always maps to the same color.
double overview_ceiling(const std::string& mode) { return mode == "group" ? 3.0 : 1.0; }

}  // namespace

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ApiService::ApiService(ServedState state, Clock clock)
    : base_(std::make_shared<const ServedState>(std::move(state))), clock_(std::move(clock)) {
    if (!clock_) clock_ = utc_timestamp;
    auto snap = std::make_shared<Snapshot>();
    snap->log = base_->dataset.overrides;
    snap->confirmed = confirmed_classes(base_->dataset, snap->log);
    snap->stats = std::make_shared<const std::map<GaitClass, GroupStats>>(base_->groupStats);
    current_ = std::move(snap);
}

void ApiService::set_override_sink(OverrideSink sink) {
    std::lock_guard lock(writerMutex_);
    sink_ = std::move(sink);
}

std::shared_ptr<const ApiService::Snapshot> ApiService::snapshot() const {
    std::lock_guard lock(publishMutex_);
    return current_;
}

void ApiService::publish(std::shared_ptr<const Snapshot> next) {
    std::lock_guard lock(publishMutex_);
    current_ = std::move(next);
}

std::vector<ClassificationOverride> ApiService::override_log() const { return snapshot()->log; }

std::map<LegKey, std::optional<GaitClass>> ApiService::confirmed() const { return snapshot()->confirmed; }

bool ApiService::stats_stale() const { return snapshot()->statsStale; }

std::shared_ptr<const ApiService::Snapshot> ApiService::fresh_stats_snapshot() {
    auto snap = snapshot();
    if (!snap->statsStale) return snap;
    std::lock_guard lock(writerMutex_);
    snap = snapshot();
    if (!snap->statsStale) return snap;
    auto next = std::make_shared<Snapshot>(*snap);
    next->stats = std::make_shared<const std::map<GaitClass, GroupStats>>(cohort_group_stats(base_->dataset, next->log));
    next->statsStale = false;
    publish(next);
    return next;
}

ApiResponse ApiService::handle(const ApiRequest& req) {
    const auto parts = split_path(req.path);
    const auto n = parts.size();
    try {
        if (req.method == "GET") {
            if (n == 1 && parts[0] == "patients") return list_patients(*snapshot());
            if (n == 2 && parts[0] == "patients") return get_patient(*snapshot(), parts[1]);
            if (n == 5 && parts[0] == "patients" && parts[2] == "sides" && parts[4] == "relevance")
                return get_relevance(parts[1], parts[3]);
            if (n == 5 && parts[0] == "patients" && parts[2] == "sides" && parts[4] == "overview")
                return get_overview(parts[1], parts[3], req);
            if (n == 3 && parts[0] == "groups" && parts[2] == "stats") return get_group_stats(parts[1]);
            if (n == 2 && parts[0] == "meta" && parts[1] == "catalog")
                return json_response(200, jsonio::catalog_document());
        } else if (req.method == "POST") {
            if (n == 5 && parts[0] == "patients" && parts[2] == "sides" && parts[4] == "classification")
                return post_classification(parts[1], parts[3], req.body);
        } else {
            return error_response(405, "method not allowed");
        }
        return error_response(404, "no such endpoint: " + req.method + " " + req.path);
    } catch (const NotFound& e) {
        return error_response(404, e.what());
    } catch (const InvalidInput& e) {
        return error_response(400, e.what());
    } catch (const MissingSide& e) {
        return error_response(409, e.what());
    } catch (const std::exception& e) {
        return error_response(500, e.what());
    }
}

namespace {

const PatientRecord& find_patient(const ServedState& state, const std::string& id) {
    const auto* p = state.dataset.find(id);
    if (p == nullptr) throw NotFound("unknown patient " + id);
    return *p;
}

Side parse_side_segment(const PatientRecord& p, const std::string& name) {
    const auto s = parse_side(name);
    if (!s) throw InvalidInput("side must be 'left' or 'right', got '" + name + "'");
    if (!p.has_side(*s)) throw NotFound("patient " + p.id + " has no " + name + " leg");
    return *s;
}

}  // namespace

ApiResponse ApiService::list_patients(const Snapshot& snap) const {
    std::vector<const PatientRecord*> sorted;
    for (const auto& p : base_->dataset.patients) sorted.push_back(&p);
    std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return a->id < b->id; });
    std::map<std::string, bool> reviewed;
    for (const auto& o : snap.log) reviewed[o.patientId] = true;
    json arr = json::array();
    for (const auto* p : sorted) {
        json sides = json::object();
        for (const auto& [s, pred] : p->predicted) {
            sides[std::string(to_string(s))] =
                json{{"predicted", encode_prediction(pred)}, {"confirmed", encode_confirmed(snap.confirmed.at({p->id, s}))}};
        }
        arr.push_back(json{{"id", p->id},
                           {"examDate", p->examDate},
                           {"walkingSpeed", p->walkingSpeed},
                           {"reviewed", reviewed.contains(p->id)},
                           {"sides", sides}});
    }
    return json_response(200, arr);
}

ApiResponse ApiService::get_patient(const Snapshot& snap, const std::string& id) const {
    const auto& p = find_patient(*base_, id);
    json sides = json::object();
    for (const auto& [s, sd] : p.perSide) {
        json channels = json::array();
        for (const auto& c : channel_catalog()) {
            const auto& avg = sd.averaged.at(c);
            json trials = json::array();
            for (const auto& t : sd.trials) {
                if (const auto it = t.find(c); it != t.end()) trials.push_back(jsonio::encode(it->second.values()));
            }
            channels.push_back(json{{"key", key(c)},
                                    {"unit", to_string(avg.unit())},
                                    {"averaged", jsonio::encode(avg.values())},
                                    {"trials", trials}});
        }
        sides[std::string(to_string(s))] = json{{"events", jsonio::encode(sd.events)},
                                                {"predicted", encode_prediction(p.predicted.at(s))},
                                                {"confirmed", encode_confirmed(snap.confirmed.at({p.id, s}))},
                                                {"channels", channels}};
    }
    return json_response(200, json{{"id", p.id},
                                   {"examDate", p.examDate},
                                   {"walkingSpeed", p.walkingSpeed},
                                   {"catalogVersion", base_->dataset.catalogVersion},
                                   {"sides", sides}});
}

ApiResponse ApiService::get_relevance(const std::string& id, const std::string& sideName) const {
    const auto& p = find_patient(*base_, id);
    const auto s = parse_side_segment(p, sideName);
    return json_response(200, jsonio::relevance_document(base_->relevance.at({p.id, s})));
}

ApiResponse ApiService::get_overview(const std::string& id, const std::string& sideName, const ApiRequest& req) {
    const auto& p = find_patient(*base_, id);
    const auto s = parse_side_segment(p, sideName);
    const auto modeIt = req.query.find("mode");
    const std::string mode = modeIt == req.query.end() ? "standard" : modeIt->second;
    const auto fmtIt = req.query.find("format");
    const std::string format = fmtIt == req.query.end() ? "json" : fmtIt->second;
    if (format != "json" && format != "svg") throw InvalidInput("format must be json or svg");

    std::map<ChannelId, CycleArray> rows;
    json body{{"patientId", p.id}, {"side", to_string(s)}, {"mode", mode}};
    if (mode == "standard") {
        rows = asymmetry_overview(p);
    } else if (mode == "explain") {
        const auto& own = base_->relevance.at({p.id, s});
        const auto other = s == Side::Left ? Side::Right : Side::Left;
        const auto it = base_->relevance.find({p.id, other});
        const auto& otherMap = it == base_->relevance.end() ? own : it->second;
        rows = s == Side::Left ? overview_relevance(own, otherMap) : overview_relevance(otherMap, own);
    } else if (mode == "group") {
        GaitClass cls;
        if (const auto it = req.query.find("class"); it != req.query.end()) {
            const auto parsed = parse_gait_class(it->second);
            if (!parsed) throw InvalidInput("unknown gait class '" + it->second + "'");
            cls = *parsed;
        } else {
            const auto& conf = snapshot()->confirmed.at({p.id, s});
            cls = conf ? *conf : p.predicted.at(s).gaitClass;
        }
        const auto snap = fresh_stats_snapshot();
        const auto st = snap->stats->find(cls);
        if (st == snap->stats->end()) throw NotFound("no legs are labeled " + std::string(to_string(cls)));
        rows = zscore_overview(p, st->second);
        body["class"] = to_string(cls);
    } else {
        throw InvalidInput("mode must be standard, explain or group");
    }
    if (format == "svg") {
        const std::string title = p.id + " " + std::string(to_string(s)) + " " + mode;
        return {200, render_overview_svg(rows, overview_ceiling(mode), title), "image/svg+xml"};
    }
    body["channels"] = encode_rows_with_meta(rows);
    return json_response(200, body);
}

ApiResponse ApiService::get_group_stats(const std::string& clsName) {
    const auto cls = parse_gait_class(clsName);
    if (!cls) throw InvalidInput("unknown gait class '" + clsName + "'");
    const auto snap = fresh_stats_snapshot();
    const auto it = snap->stats->find(*cls);
    if (it == snap->stats->end()) throw NotFound("no legs are labeled " + clsName);
    const auto& stats = it->second;
    json channels = json::array();
    for (const auto& c : channel_catalog()) {
        json sides = json::object();
        for (auto s : kBothSides) {
            if (const auto* st = stats.find(c, s)) {
                sides[std::string(to_string(s))] =
                    json{{"mean", jsonio::encode(st->mean)}, {"std", jsonio::encode(st->std)}, {"n", st->n}};
            }
        }
        channels.push_back(json{{"key", key(c)}, {"unit", to_string(unit_of(c))}, {"sides", sides}});
    }
    return json_response(200, json{{"class", to_string(*cls)}, {"legs", stats.legs()}, {"channels", channels}});
}

ApiResponse ApiService::post_classification(const std::string& id, const std::string& sideName,
                                            const std::string& body) {
    const auto& p = find_patient(*base_, id);
    const auto s = parse_side_segment(p, sideName);
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error&) {
        throw InvalidInput("request body is not valid JSON");
    }
    if (!doc.is_object()) throw InvalidInput("request body must be a JSON object");
    if (!doc.contains("class") || !doc["class"].is_string()) throw InvalidInput("field 'class' (string) is required");
    const auto cls = parse_gait_class(doc["class"].get<std::string>());
    if (!cls) throw InvalidInput("unknown gait class '" + doc["class"].get<std::string>() + "'");

    ClassificationOverride o;
    o.patientId = p.id;
    o.side = s;
    o.chosenClass = *cls;
    if (doc.contains("note") && !doc["note"].is_null()) {
        if (!doc["note"].is_string()) throw InvalidInput("field 'note' must be a string");
        o.note = doc["note"].get<std::string>();
    }
    if (doc.contains("timestamp")) {
        if (!doc["timestamp"].is_string() || !is_timestamp(doc["timestamp"].get<std::string>()))
            throw InvalidInput("field 'timestamp' must be an ISO-8601 date-time");
        o.timestamp = doc["timestamp"].get<std::string>();
    } else {
        o.timestamp = clock_();
    }

    std::lock_guard lock(writerMutex_);
    auto next = std::make_shared<Snapshot>(*snapshot());
    next->log.push_back(o);
    next->confirmed[{p.id, s}] = *cls;
    next->statsStale = true;
    if (sink_) sink_(o);
    publish(next);

    json out{{"patientId", o.patientId},
             {"side", to_string(o.side)},
             {"confirmed", to_string(o.chosenClass)},
             {"timestamp", o.timestamp},
             {"statsStale", true}};
    if (o.note) out["note"] = *o.note;
    return json_response(200, out);
}

}  // namespace gaitxai
