#pragma once

#include <string>

#include "wmc/patch.hpp"

namespace wmc::io {

enum class Palette { Mono, Colour };

Palette parse_palette(const std::string& name);

/// Scatter plot of the physical points. Colour k is drawn with glyph shape
/// k mod 3 (circle, square, triangle); colours 3..5 add a centre dot, so
/// colours differing by 3 differ only by the dot.
std::string render_svg(const cutproject::ColoredPatch& patch, Palette palette = Palette::Mono);

}  // namespace wmc::io
