#pragma once

#include <array>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "robustcs/core.hpp"
#include "robustcs/region.hpp"

namespace robustcs {

struct NamedRegion {
    std::string name;
    std::vector<Polygon> pieces;
};

namespace detail {

inline std::string fmt3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

inline const char* palette(std::size_t k) {
    static const std::array<const char*, 6> colors{"#4477aa", "#ee6677", "#228833", "#ccbb44", "#66ccee", "#aa3377"};
    return colors[k % colors.size()];
}

inline std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n"
           "<rect x=\"0\" y=\"0\" width=\"512\" height=\"512\" fill=\"white\"/>\n";
}

} // namespace detail

/// x = state-0 payoff to the right, y = state-1 payoff upwards. Empty regions emit an empty path.
inline std::string regions_svg(const std::vector<NamedRegion>& regions, const Box& box) {
    auto px = [&](double x) { return (x - box.xmin) / (box.xmax - box.xmin) * 512.0; };
    auto py = [&](double y) { return 512.0 - (y - box.ymin) / (box.ymax - box.ymin) * 512.0; };
    std::string out = detail::svg_open();
    for (std::size_t k = 0; k < regions.size(); ++k) {
        std::string d;
        for (const auto& poly : regions[k].pieces) {
            for (std::size_t i = 0; i < poly.size(); ++i)
                d += (i == 0 ? "M" : " L") + detail::fmt3(px(poly[i][0])) + " " + detail::fmt3(py(poly[i][1]));
            if (!poly.empty()) d += " Z ";
        }
        if (!d.empty() && d.back() == ' ') d.pop_back();
        out += "<path id=\"" + regions[k].name + "\" d=\"" + d + "\" fill=\"" + detail::palette(k) +
               "\" fill-opacity=\"0.5\" stroke=\"black\" stroke-width=\"0.5\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

/// Three-state beliefs on the simplex triangle, green where the check held and red where it failed.
inline std::string simplex_svg(const std::vector<std::pair<Belief, bool>>& points) {
    const std::array<std::array<double, 2>, 3> corner{{{16.0, 496.0}, {496.0, 496.0}, {256.0, 80.3}}};
    std::string out = detail::svg_open();
    out += "<path d=\"M16.000 496.000 L496.000 496.000 L256.000 80.300 Z\" fill=\"none\" stroke=\"black\"/>\n";
    for (const auto& [mu, ok] : points) {
        detail::require(mu.size() == 3, ErrorKind::DimensionError, "simplex map needs three-state beliefs");
        double x = 0.0, y = 0.0;
        for (std::size_t s = 0; s < 3; ++s) {
            x += mu[s] * corner[s][0];
            y += mu[s] * corner[s][1];
        }
        out += "<circle cx=\"" + detail::fmt3(x) + "\" cy=\"" + detail::fmt3(y) + "\" r=\"2\" fill=\"" +
               (ok ? "#228833" : "#ee6677") + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

} // namespace robustcs
