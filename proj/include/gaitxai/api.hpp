#pragma once

#include "gaitxai/dataset.hpp"
#include "gaitxai/group_stats.hpp"
#include "gaitxai/pipeline.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace gaitxai {

struct ApiRequest {
    std::string method;  // "GET" or "POST"
    std::string path;    // e.g. "/patients/100001/sides/left/relevance"
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string body;
    std::string contentType = "application/json";
};

/// Transport-independent implementation of the HTTP endpoints.
///
/// Reads work on an immutable snapshot obtained under a short lock. Writes (override POSTs and
/// the lazy group-stats recompute) are serialized by a writer mutex, build a new snapshot and
/// publish it atomically, so every request sees either the pre- or post-write state.
class ApiService {
public:
    using Clock = std::function<std::string()>;  // ISO-8601 timestamp source
    using OverrideSink = std::function<void(const ClassificationOverride&)>;

    explicit ApiService(ServedState state, Clock clock = {});

    ApiResponse handle(const ApiRequest& request);

    /// Called (under the writer lock) for every accepted override, before it is published.
    void set_override_sink(OverrideSink sink);

    /// Full log: the dataset's overrides followed by those accepted by this service.
    std::vector<ClassificationOverride> override_log() const;
    std::map<LegKey, std::optional<GaitClass>> confirmed() const;
    bool stats_stale() const;
    const ServedState& state() const { return *base_; }

private:
    struct Snapshot {
        std::vector<ClassificationOverride> log;
        std::map<LegKey, std::optional<GaitClass>> confirmed;
        std::shared_ptr<const std::map<GaitClass, GroupStats>> stats;
        bool statsStale = false;
    };

    std::shared_ptr<const Snapshot> snapshot() const;
    void publish(std::shared_ptr<const Snapshot> next);
    std::shared_ptr<const Snapshot> fresh_stats_snapshot();

    ApiResponse list_patients(const Snapshot& snap) const;
    ApiResponse get_patient(const Snapshot& snap, const std::string& id) const;
    ApiResponse get_relevance(const std::string& id, const std::string& side) const;
    ApiResponse get_overview(const std::string& id, const std::string& side, const ApiRequest& req);
    ApiResponse get_group_stats(const std::string& cls);
    ApiResponse post_classification(const std::string& id, const std::string& side, const std::string& body);

    std::shared_ptr<const ServedState> base_;
    Clock clock_;
    OverrideSink sink_;
    mutable std::mutex publishMutex_;
    std::mutex writerMutex_;
    std::shared_ptr<const Snapshot> current_;
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

}  // namespace gaitxai
