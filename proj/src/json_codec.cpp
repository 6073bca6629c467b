#include "gaitxai/json_codec.hpp"

#include "gaitxai/errors.hpp"

#include <cmath>

namespace gaitxai::jsonio {

json encode(std::span<const double> values) {
    json arr = json::array();
    for (double v : values) arr.push_back(v);
    return arr;
}

json encode(const GaitEvents& e) {
    return json{{"oppositeToeOff", e.oppositeToeOff},
                {"oppositeInitialContact", e.oppositeInitialContact},
                {"toeOff", e.toeOff}};
}

json encode_channel(ChannelId c) {
    return json{{"index", catalog_index(c)},
                {"key", key(c)},
                {"label", label(c)},
                {"variable", to_string(c.variable)},
                {"bodyPart", to_string(c.bodyPart)},
                {"plane", c.variable == Variable::Power ? json(nullptr) : json(to_string(c.plane))},
                {"unit", to_string(unit_of(c))},
                {"inModel", in_model(c)}};
}

json encode_rows(const std::map<ChannelId, CycleArray>& rows) {
    json arr = json::array();
    for (const auto& [c, row] : rows) arr.push_back(json{{"key", key(c)}, {"values", encode(row)}});
    return arr;
}

json catalog_document() {
    json channels = json::array();
    for (const auto& c : channel_catalog()) channels.push_back(encode_channel(c));
    json model = json::array();
    for (const auto& c : model_channels()) model.push_back(key(c));
    json classes = json::array();
    for (auto cls : kAllClasses) classes.push_back(json{{"code", index_of(cls)}, {"name", to_string(cls)}});
    return json{{"version", kCatalogVersion},
                {"cyclePoints", kCyclePoints},
                {"channels", channels},
                {"modelChannels", model},
                {"classes", classes}};
}

json relevance_document(const RelevanceMap& map) {
    json rows = json::array();
    for (const auto& c : model_channels()) {
        const auto row = map.channel_row(c);
        json levels = json::array();
        for (double r : row) levels.push_back(to_string(bin_relevance(r)));
        rows.push_back(json{{"key", key(c)}, {"values", encode(row)}, {"levels", levels}});
    }
    return json{{"patientId", map.patientId},
                {"side", to_string(map.side)},
                {"targetClass", to_string(map.targetClass)},
                {"channels", rows},
                {"raw", encode(map.raw)}};
}

void Cursor::fail(const std::string& message) const { throw FormatError(path_.empty() ? "/" : path_, message); }

Cursor Cursor::at(const std::string& key) const {
    if (!value_.is_object()) fail("expected an object");
    const auto it = value_.find(key);
    if (it == value_.end()) throw FormatError(path_ + "/" + key, "missing field");
    return Cursor(*it, path_ + "/" + key);
}

Cursor Cursor::at(std::size_t index) const {
    if (!value_.is_array()) fail("expected an array");
    if (index >= value_.size()) throw FormatError(path_ + "/" + std::to_string(index), "index out of range");
    return Cursor(value_[index], path_ + "/" + std::to_string(index));
}

bool Cursor::has(const std::string& key) const { return value_.is_object() && value_.contains(key); }

const json::object_t& Cursor::object() const {
    if (!value_.is_object()) fail("expected an object");
    return value_.get_ref<const json::object_t&>();
}

std::size_t Cursor::array_size() const {
    if (!value_.is_array()) fail("expected an array");
    return value_.size();
}

std::string Cursor::string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
}

double Cursor::number() const {
    if (!value_.is_number()) fail("expected a number");
    const double v = value_.get<double>();
    if (!std::isfinite(v)) fail("expected a finite number");
    return v;
}

std::uint64_t Cursor::unsigned_integer() const {
    if (!value_.is_number_unsigned()) fail("expected a non-negative integer");
    return value_.get<std::uint64_t>();
}

CycleArray Cursor::cycle() const {
    if (array_size() != kCyclePoints) fail("expected " + std::to_string(kCyclePoints) + " samples");
    CycleArray out{};
    for (std::size_t i = 0; i < kCyclePoints; ++i) out[i] = at(i).number();
    return out;
}

GaitEvents Cursor::events() const {
    GaitEvents e;
    e.oppositeToeOff = at("oppositeToeOff").number();
    e.oppositeInitialContact = at("oppositeInitialContact").number();
    e.toeOff = at("toeOff").number();
    if (!e.valid()) fail("gait events must satisfy 0 < oppositeToeOff < oppositeInitialContact < toeOff < 100");
    return e;
}

GaitClass Cursor::gait_class() const {
    const auto cls = parse_gait_class(string());
    if (!cls) fail("unknown gait class '" + string() + "'");
    return *cls;
}

Side Cursor::side() const {
    const auto s = parse_side(string());
    if (!s) fail("unknown side '" + string() + "'");
    return *s;
}

}  // namespace gaitxai::jsonio
