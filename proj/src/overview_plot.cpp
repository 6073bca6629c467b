#include "gaitxai/overview_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace gaitxai {

namespace {

constexpr std::array<Rgb, 9> kStops = {{{0x44, 0x01, 0x54},
                                        {0x47, 0x2d, 0x7b},
                                        {0x3b, 0x52, 0x8b},
                                        {0x2c, 0x72, 0x8e},
                                        {0x21, 0x91, 0x8c},
                                        {0x28, 0xae, 0x80},
                                        {0x5e, 0xc9, 0x62},
                                        {0xad, 0xdc, 0x30},
                                        {0xfd, 0xe7, 0x25}}};

constexpr int kLabelWidth = 170;
constexpr int kCellWidth = 4;
constexpr int kTitleHeight = 20;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

Rgb overview_color(double t) {
    if (!(t > 0.0)) return kStops.front();
    if (t >= 1.0) return kStops.back();
    const double pos = t * static_cast<double>(kStops.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    const double f = pos - static_cast<double>(i);
    const auto& a = kStops[i];
    const auto& b = kStops[i + 1];
    auto mix = [f](int x, int y) { return static_cast<int>(std::lround(x + f * (y - x))); };
    return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

std::string hex(Rgb c) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c.r, c.g, c.b);
    return buf;
}

std::string render_overview_svg(const std::map<ChannelId, CycleArray>& rows, double vmax, const std::string& title) {
    const double scale = vmax > 0.0 ? vmax : 1.0;
    const int width = kLabelWidth + kCellWidth * static_cast<int>(kCyclePoints);
    const int height = kTitleHeight + kStripeHeight * static_cast<int>(kNumChannels);
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"9\">\n";
    svg << "<text x=\"2\" y=\"14\" font-size=\"12\">" << escape(title) << "</text>\n";
    const CycleArray zeros{};
    for (std::size_t k = 0; k < kNumChannels; ++k) {
        const auto c = channel_catalog()[k];
        const auto it = rows.find(c);
        const auto& row = it == rows.end() ? zeros : it->second;
        const int y = kTitleHeight + kStripeHeight * static_cast<int>(k);
        svg << "<g class=\"stripe\" data-key=\"" << key(c) << "\">";
        svg << "<text x=\"2\" y=\"" << y + kStripeHeight - 2 << "\">" << escape(label(c)) << "</text>";
        for (std::size_t i = 0; i < kCyclePoints; ++i) {
            svg << "<rect x=\"" << kLabelWidth + kCellWidth * static_cast<int>(i) << "\" y=\"" << y << "\" width=\""
                << kCellWidth << "\" height=\"" << kStripeHeight << "\" fill=\"" << hex(overview_color(row[i] / scale))
                << "\"/>";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace gaitxai
