#pragma once

#include "gaitxai/channels.hpp"
#include "gaitxai/relevance.hpp"
#include "gaitxai/series.hpp"

#include "json.hpp"

#include <map>
#include <span>
#include <string>

namespace gaitxai::jsonio {

using nlohmann::json;

json encode(std::span<const double> values);
json encode(const GaitEvents& events);
json encode_channel(ChannelId c);
json encode_rows(const std::map<ChannelId, CycleArray>& rows);
/// {version, channels: [...], modelChannels: [...], classes: [...]}
json catalog_document();
/// {patientId, side, targetClass, channels: [{key, values[101], levels[101]}] x 14, raw[1414]}
json relevance_document(const RelevanceMap& map);

/// Read-only view of a JSON value that remembers its JSON-pointer path so every schema
/// violation can be reported as FormatError(path, ...).
class Cursor {
public:
    Cursor(const json& value, std::string path) : value_(value), path_(std::move(path)) {}

    Cursor at(const std::string& key) const;
    Cursor at(std::size_t index) const;
    bool has(const std::string& key) const;

    const json& value() const { return value_; }
    const std::string& path() const { return path_; }

    const json::object_t& object() const;
    std::size_t array_size() const;
    std::string string() const;
    double number() const;
    std::uint64_t unsigned_integer() const;
    CycleArray cycle() const;
    GaitEvents events() const;
    GaitClass gait_class() const;
    Side side() const;

    [[noreturn]] void fail(const std::string& message) const;

private:
    const json& value_;
    std::string path_;
};

}  // namespace gaitxai::jsonio
