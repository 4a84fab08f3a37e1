#pragma once

#include <optional>
#include <span>
#include <vector>

#include "wmc/lattice.hpp"

namespace wmc::cutproject {

using Polygon = std::vector<Vec2>;

/// Shoelace area; positive for counterclockwise polygons.
double signed_area(const Polygon& p);

/// Sutherland-Hodgman clip of subject against a convex counterclockwise clipper.
Polygon clip_convex(const Polygon& subject, const Polygon& clipper);

enum class Location { Inside, Outside, BoundaryNear };

struct DodecagonParams {
    double rho = 1.0;
    Vec2 centre = Vec2::Zero();
};

/// Convex counterclockwise polygon with positive area.
class ConvexWindow {
public:
    /// Throws ValidationError unless the vertices form a strictly convex
    /// counterclockwise polygon with positive area.
    explicit ConvexWindow(Polygon vertices);

    /// Regular dodecagon with circumradius rho and vertices at angles k*pi/6
    /// around centre.
    static ConvexWindow regular_dodecagon(double rho, Vec2 centre);

    const Polygon& vertices() const noexcept { return vertices_; }
    const std::optional<DodecagonParams>& dodecagon() const noexcept { return dodecagon_; }
    double area() const { return area_; }
    Vec2 min_corner() const { return lo_; }
    Vec2 max_corner() const { return hi_; }

    /// Smallest signed distance to an edge line: positive inside.
    double depth(const Vec2& p) const;
    ConvexWindow translated(const Vec2& v) const;

private:
    Polygon vertices_;
    std::optional<DodecagonParams> dodecagon_;
    double area_ = 0.0;
    Vec2 lo_, hi_;
};

inline constexpr double kBoundaryEpsilon = 1e-9;

Location window_contains(const ConvexWindow& w, const Vec2& p, double eps = kBoundaryEpsilon);

/// Area of W intersected with every translate -v_j + W. At most 8 shifts.
double window_intersection_area(const ConvexWindow& w, std::span<const Vec2> shifts);

}  // namespace wmc::cutproject
