#include "gaitxai/channels.hpp"

#include "gaitxai/errors.hpp"

#include <algorithm>

namespace gaitxai {

namespace {

constexpr std::array<std::string_view, kNumClasses> kClassNames = {
    "TrueEquinus", "JumpGait", "ApparentEquinus", "CrouchGait"};

constexpr ChannelId ch(Variable v, BodyPart b, Plane p) { return ChannelId{v, b, p}; }

using V = Variable;
using B = BodyPart;
using P = Plane;

constexpr std::array<ChannelId, kNumChannels> kCatalog = {
    ch(V::Angle, B::Pelvis, P::Sagittal),  ch(V::Angle, B::Pelvis, P::Frontal),  ch(V::Angle, B::Pelvis, P::Transverse),
    ch(V::Angle, B::Hip, P::Sagittal),     ch(V::Angle, B::Hip, P::Frontal),     ch(V::Angle, B::Hip, P::Transverse),
    ch(V::Angle, B::Knee, P::Sagittal),    ch(V::Angle, B::Knee, P::Frontal),    ch(V::Angle, B::Knee, P::Transverse),
    ch(V::Angle, B::Ankle, P::Sagittal),   ch(V::Angle, B::Ankle, P::Frontal),   ch(V::Angle, B::Ankle, P::Transverse),
    ch(V::Angle, B::FootProgression, P::Transverse),
    ch(V::Angle, B::FootFloor, P::Sagittal),
    ch(V::Moment, B::Hip, P::Sagittal),    ch(V::Moment, B::Hip, P::Frontal),    ch(V::Moment, B::Hip, P::Transverse),
    ch(V::Moment, B::Knee, P::Sagittal),   ch(V::Moment, B::Knee, P::Frontal),   ch(V::Moment, B::Knee, P::Transverse),
    ch(V::Moment, B::Ankle, P::Sagittal),  ch(V::Moment, B::Ankle, P::Frontal),  ch(V::Moment, B::Ankle, P::Transverse),
    ch(V::Power, B::Hip, P::Sagittal),     ch(V::Power, B::Knee, P::Sagittal),   ch(V::Power, B::Ankle, P::Sagittal),
    ch(V::GRF, B::FootFloor, P::Sagittal), ch(V::GRF, B::FootFloor, P::Frontal), ch(V::GRF, B::FootFloor, P::Transverse),
};

// Pelvis/hip/knee in all planes, ankle sagittal + transverse, then GRF.
constexpr std::array<ChannelId, kNumModelChannels> kModelSet = {
    ch(V::Angle, B::Pelvis, P::Sagittal),  ch(V::Angle, B::Pelvis, P::Frontal),  ch(V::Angle, B::Pelvis, P::Transverse),
    ch(V::Angle, B::Hip, P::Sagittal),     ch(V::Angle, B::Hip, P::Frontal),     ch(V::Angle, B::Hip, P::Transverse),
    ch(V::Angle, B::Knee, P::Sagittal),    ch(V::Angle, B::Knee, P::Frontal),    ch(V::Angle, B::Knee, P::Transverse),
    ch(V::Angle, B::Ankle, P::Sagittal),   ch(V::Angle, B::Ankle, P::Transverse),
    ch(V::GRF, B::FootFloor, P::Sagittal), ch(V::GRF, B::FootFloor, P::Frontal), ch(V::GRF, B::FootFloor, P::Transverse),
};

static_assert(std::is_sorted(kCatalog.begin(), kCatalog.end()));
static_assert(std::is_sorted(kModelSet.begin(), kModelSet.end()));

std::string lower_body_part(BodyPart b) {
    switch (b) {
        case BodyPart::Pelvis: return "pelvis";
        case BodyPart::Hip: return "hip";
        case BodyPart::Knee: return "knee";
        case BodyPart::Ankle: return "ankle";
        case BodyPart::FootProgression: return "footprogression";
        case BodyPart::FootFloor: return "footfloor";
    }
    return "?";
}

std::string lower_plane(Plane p) {
    switch (p) {
        case Plane::Sagittal: return "sagittal";
        case Plane::Frontal: return "frontal";
        case Plane::Transverse: return "transverse";
    }
    return "?";
}

}  // namespace

std::string_view to_string(GaitClass c) { return kClassNames.at(index_of(c)); }

std::optional<GaitClass> parse_gait_class(std::string_view name) {
    for (std::size_t i = 0; i < kClassNames.size(); ++i) {
        if (kClassNames[i] == name) return static_cast<GaitClass>(i);
    }
    return std::nullopt;
}

GaitClass gait_class_from_index(std::size_t index) {
    if (index >= kNumClasses) throw InvalidInput("gait class index out of range: " + std::to_string(index));
    return static_cast<GaitClass>(index);
}

std::string_view to_string(Side s) { return s == Side::Left ? "left" : "right"; }

std::optional<Side> parse_side(std::string_view name) {
    if (name == "left") return Side::Left;
    if (name == "right") return Side::Right;
    return std::nullopt;
}

std::string_view to_string(Variable v) {
    switch (v) {
        case Variable::Angle: return "Angle";
        case Variable::Moment: return "Moment";
        case Variable::Power: return "Power";
        case Variable::GRF: return "GRF";
    }
    return "?";
}

std::string_view to_string(BodyPart b) {
    switch (b) {
        case BodyPart::Pelvis: return "Pelvis";
        case BodyPart::Hip: return "Hip";
        case BodyPart::Knee: return "Knee";
        case BodyPart::Ankle: return "Ankle";
        case BodyPart::FootProgression: return "FootProgression";
        case BodyPart::FootFloor: return "FootFloor";
    }
    return "?";
}

std::string_view to_string(Plane p) {
    switch (p) {
        case Plane::Sagittal: return "Sagittal";
        case Plane::Frontal: return "Frontal";
        case Plane::Transverse: return "Transverse";
    }
    return "?";
}

std::string_view to_string(Unit u) {
    switch (u) {
        case Unit::Degrees: return "deg";
        case Unit::NewtonMeterPerKg: return "Nm/kg";
        case Unit::WattPerKg: return "W/kg";
        case Unit::PercentBodyWeight: return "%BW";
    }
    return "?";
}

std::optional<Unit> parse_unit(std::string_view name) {
    for (Unit u : {Unit::Degrees, Unit::NewtonMeterPerKg, Unit::WattPerKg, Unit::PercentBodyWeight}) {
        if (to_string(u) == name) return u;
    }
    return std::nullopt;
}

std::string key(ChannelId c) {
    switch (c.variable) {
        case Variable::Angle:
            if (c.bodyPart == BodyPart::FootProgression || c.bodyPart == BodyPart::FootFloor)
                return "angle_" + lower_body_part(c.bodyPart);
            return "angle_" + lower_body_part(c.bodyPart) + "_" + lower_plane(c.plane);
        case Variable::Moment: return "moment_" + lower_body_part(c.bodyPart) + "_" + lower_plane(c.plane);
        case Variable::Power: return "power_" + lower_body_part(c.bodyPart);
        case Variable::GRF: return "grf_" + lower_plane(c.plane);
    }
    return "?";
}

std::string label(ChannelId c) {
    static constexpr std::array<std::string_view, 3> kPlaneAbbrev = {"sag.", "front.", "trans."};
    const auto plane = std::string(kPlaneAbbrev[static_cast<std::size_t>(c.plane)]);
    switch (c.variable) {
        case Variable::Angle:
            if (c.bodyPart == BodyPart::FootProgression) return "Foot progression angle";
            if (c.bodyPart == BodyPart::FootFloor) return "Foot-floor angle";
            return std::string(to_string(c.bodyPart)) + " angle (" + plane + ")";
        case Variable::Moment: return std::string(to_string(c.bodyPart)) + " moment (" + plane + ")";
        case Variable::Power: return std::string(to_string(c.bodyPart)) + " power";
        case Variable::GRF: return "GRF (" + plane + ")";
    }
    return "?";
}

Unit unit_of(ChannelId c) {
    switch (c.variable) {
        case Variable::Angle: return Unit::Degrees;
        case Variable::Moment: return Unit::NewtonMeterPerKg;
        case Variable::Power: return Unit::WattPerKg;
        case Variable::GRF: return Unit::PercentBodyWeight;
    }
    return Unit::Degrees;
}

std::span<const ChannelId, kNumChannels> channel_catalog() { return kCatalog; }
std::span<const ChannelId, kNumModelChannels> model_channels() { return kModelSet; }

std::size_t catalog_index(ChannelId c) {
    const auto it = std::lower_bound(kCatalog.begin(), kCatalog.end(), c);
    if (it == kCatalog.end() || *it != c) throw InvalidInput("channel not in catalog");
    return static_cast<std::size_t>(it - kCatalog.begin());
}

std::optional<std::size_t> model_index(ChannelId c) {
    const auto it = std::lower_bound(kModelSet.begin(), kModelSet.end(), c);
    if (it == kModelSet.end() || *it != c) return std::nullopt;
    return static_cast<std::size_t>(it - kModelSet.begin());
}

bool in_model(ChannelId c) { return model_index(c).has_value(); }

std::optional<ChannelId> parse_channel_key(std::string_view k) {
    for (const auto& c : kCatalog) {
        if (key(c) == k) return c;
    }
    return std::nullopt;
}

}  // namespace gaitxai
