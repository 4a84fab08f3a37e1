#include "wmc/svg.hpp"

#include <cstdio>
#include <sstream>

#include "wmc/errors.hpp"

namespace wmc::io {

namespace {

std::string num(double x) {
    if (x == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

const char* fill_for(int colour, Palette palette) {
    static const char* hues[3] = {"#1b6ca8", "#c0392b", "#27864a"};
    return palette == Palette::Colour ? hues[colour % 3] : "#222222";
}

void glyph(std::ostream& os, double cx, double cy, double s, int colour, Palette palette) {
    const char* fill = fill_for(colour, palette);
    switch (colour % 3) {
        case 0:
            os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(s) << "\" fill=\"" << fill
               << "\"/>";
            break;
        case 1:
            os << "<rect x=\"" << num(cx - s) << "\" y=\"" << num(cy - s) << "\" width=\"" << num(2 * s)
               << "\" height=\"" << num(2 * s) << "\" fill=\"" << fill << "\"/>";
            break;
        default:
            os << "<polygon points=\"" << num(cx) << "," << num(cy - 1.2 * s) << " " << num(cx - 1.1 * s) << ","
               << num(cy + 0.8 * s) << " " << num(cx + 1.1 * s) << "," << num(cy + 0.8 * s) << "\" fill=\"" << fill
               << "\"/>";
            break;
    }
    if (colour >= 3)
        os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(0.4 * s)
           << "\" fill=\"#ffffff\"/>";
    os << "\n";
}

}  // namespace

Palette parse_palette(const std::string& name) {
    if (name == "mono") return Palette::Mono;
    if (name == "colour" || name == "color") return Palette::Colour;
    throw ValidationError("unknown palette '" + name + "' (expected mono or colour)");
}

std::string render_svg(const cutproject::ColoredPatch& patch, Palette palette) {
    const double half = patch.radius() + patch.margin();
    const double glyph_size = 0.12;
    const double legend_height = 2.0;
    const double width = 2 * half;
    const double height = 2 * half + legend_height;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(-half) << " " << num(-half) << " "
       << num(width) << " " << num(height) << "\" width=\"800\" height=\"" << num(800 * height / width) << "\">\n";
    os << "<rect x=\"" << num(-half) << "\" y=\"" << num(-half) << "\" width=\"" << num(width) << "\" height=\""
       << num(height) << "\" fill=\"#ffffff\"/>\n";
    // Axes and the counting box.
    os << "<g stroke=\"#999999\" stroke-width=\"0.03\" fill=\"none\">\n";
    os << "<line x1=\"" << num(-half) << "\" y1=\"0\" x2=\"" << num(half) << "\" y2=\"0\"/>\n";
    os << "<line x1=\"0\" y1=\"" << num(-half) << "\" x2=\"0\" y2=\"" << num(half) << "\"/>\n";
    os << "<rect x=\"" << num(-patch.radius()) << "\" y=\"" << num(-patch.radius()) << "\" width=\""
       << num(2 * patch.radius()) << "\" height=\"" << num(2 * patch.radius()) << "\" stroke-dasharray=\"0.2 0.2\"/>\n";
    os << "</g>\n<g>\n";
    // SVG y grows downwards; flip so the picture has the usual orientation.
    for (const auto& p : patch.points()) glyph(os, p.phys.x(), -p.phys.y(), glyph_size, p.colour, palette);
    os << "</g>\n<g font-size=\"0.5\" font-family=\"sans-serif\">\n";
    for (int k = 0; k < 6; ++k) {
        const double x = -half + 0.6 + k * (width - 1.2) / 6.0;
        const double y = half + legend_height / 2.0;
        glyph(os, x, y, 0.25, k, palette);
        os << "<text x=\"" << num(x + 0.45) << "\" y=\"" << num(y + 0.18) << "\">colour " << k << "</text>\n";
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

}  // namespace wmc::io
