#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>

namespace gaitxai {

/// Four-way gait pattern taxonomy. The integer codes are the CNN output indices.
enum class GaitClass : int { TrueEquinus = 0, JumpGait = 1, ApparentEquinus = 2, CrouchGait = 3 };

inline constexpr std::size_t kNumClasses = 4;
inline constexpr std::array<GaitClass, kNumClasses> kAllClasses = {
    GaitClass::TrueEquinus, GaitClass::JumpGait, GaitClass::ApparentEquinus, GaitClass::CrouchGait};

std::string_view to_string(GaitClass c);
std::optional<GaitClass> parse_gait_class(std::string_view name);
GaitClass gait_class_from_index(std::size_t index);
constexpr std::size_t index_of(GaitClass c) { return static_cast<std::size_t>(c); }

enum class Side : int { Left = 0, Right = 1 };
inline constexpr std::array<Side, 2> kBothSides = {Side::Left, Side::Right};

std::string_view to_string(Side s);
std::optional<Side> parse_side(std::string_view name);

enum class Variable : int { Angle, Moment, Power, GRF };
// GRF components are attached to FootFloor (the foot/ground interface).
enum class BodyPart : int { Pelvis, Hip, Knee, Ankle, FootProgression, FootFloor };
// Joint powers have no anatomical plane and are tagged Sagittal.
enum class Plane : int { Sagittal, Frontal, Transverse };

enum class Unit : int { Degrees, NewtonMeterPerKg, WattPerKg, PercentBodyWeight };

std::string_view to_string(Variable v);
std::string_view to_string(BodyPart b);
std::string_view to_string(Plane p);
std::string_view to_string(Unit u);
std::optional<Unit> parse_unit(std::string_view name);

/// One of the 29 side-agnostic biomechanical time series.
/// The defaulted ordering coincides with the catalog order.
struct ChannelId {
    Variable variable;
    BodyPart bodyPart;
    Plane plane;

    auto operator<=>(const ChannelId&) const = default;
};

/// Stable string key such as "angle_knee_sagittal", "power_hip" or "grf_frontal".
std::string key(ChannelId c);
/// Short human-readable label, e.g. "Knee angle (sag.)".
std::string label(ChannelId c);
Unit unit_of(ChannelId c);

inline constexpr std::size_t kNumChannels = 29;
inline constexpr std::size_t kNumModelChannels = 14;
inline constexpr std::string_view kCatalogVersion = "gait-catalog-29/v1";

/// All 29 channels in report order (row-major over the line-plot matrix).
std::span<const ChannelId, kNumChannels> channel_catalog();
/// The 14 channels fed to the classifier, in feature-vector segment order.
std::span<const ChannelId, kNumModelChannels> model_channels();

std::size_t catalog_index(ChannelId c);
/// Position inside the model channel set, if the channel belongs to it.
std::optional<std::size_t> model_index(ChannelId c);
bool in_model(ChannelId c);
std::optional<ChannelId> parse_channel_key(std::string_view k);

}  // namespace gaitxai
