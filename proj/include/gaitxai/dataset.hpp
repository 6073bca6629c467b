#pragma once

#include "gaitxai/channels.hpp"
#include "gaitxai/patient.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gaitxai {

using LegKey = std::pair<std::string, Side>;  // (patient id, side)

/// Clinician decision on a leg. The log is append-only; the latest entry per leg wins.
struct ClassificationOverride {
    std::string patientId;
    Side side = Side::Left;
    GaitClass chosenClass = GaitClass::TrueEquinus;
    std::string timestamp;  // ISO-8601
    std::optional<std::string> note;

    bool operator==(const ClassificationOverride&) const = default;
};

struct Dataset {
    std::vector<PatientRecord> patients;
    /// Annotated legs; patients without entries are awaiting review.
    std::map<LegKey, GaitClass> groundTruth;
    std::vector<ClassificationOverride> overrides;
    std::string catalogVersion = std::string(kCatalogVersion);

    const PatientRecord* find(const std::string& id) const;

    bool operator==(const Dataset&) const = default;
};

/// Unique ids, valid records, ground truth referring to existing legs. Throws InvalidInput.
void validate(const Dataset& ds);

/// Latest override per leg, replayed in log order.
std::map<LegKey, GaitClass> replay_overrides(const std::vector<ClassificationOverride>& log);

/// Label used for cohort statistics: the latest override, else the annotation.
std::optional<GaitClass> effective_label(const Dataset& ds, const LegKey& leg);

inline constexpr int kDatasetFormatVersion = 1;

/// Versioned JSON container; see docs/formats.md. Doubles are written in shortest
/// round-trip form so a save/load cycle is bit-exact.
std::string dataset_to_json(const Dataset& ds);
/// Throws FormatError (with a JSON-pointer path) on syntax, schema or version problems.
Dataset dataset_from_json(const std::string& text);

void save_dataset(const Dataset& ds, const std::filesystem::path& path);

/// Override log file: one JSON object per line, same fields as the dataset's "overrides" entries.
std::string override_to_json(const ClassificationOverride& o);
void append_override(const std::filesystem::path& path, const ClassificationOverride& o);
/// Missing file -> empty log. Throws FormatError ("/<line>/<field>") on a malformed line.
std::vector<ClassificationOverride> load_override_log(const std::filesystem::path& path);
Dataset load_dataset(const std::filesystem::path& path);

}  // namespace gaitxai
