#pragma once

#include "gaitxai/channels.hpp"
#include "gaitxai/series.hpp"

#include <array>
#include <map>
#include <string>

namespace gaitxai {

struct Rgb {
    int r = 0;
    int g = 0;
    int b = 0;

    bool operator==(const Rgb&) const = default;
};

/// Sequential multi-hue scale (viridis stops) shared by all overview modes; t is clamped to [0,1].
Rgb overview_color(double t);
std::string hex(Rgb c);

inline constexpr int kStripeHeight = 10;

/// Static heatmap: one 10 px stripe per catalog channel, in catalog order, cells colored by
/// value / vmax. Channels missing from `rows` are drawn at the lowest color.
std::string render_overview_svg(const std::map<ChannelId, CycleArray>& rows, double vmax, const std::string& title);

}  // namespace gaitxai
