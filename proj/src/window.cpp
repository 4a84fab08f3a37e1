#include "wmc/window.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "wmc/errors.hpp"

namespace wmc::cutproject {

namespace {

double cross(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

double signed_area(const Polygon& p) {
    double twice = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) twice += cross(p[i], p[(i + 1) % p.size()]);
    return 0.5 * twice;
}

Polygon clip_convex(const Polygon& subject, const Polygon& clipper) {
    Polygon out = subject;
    for (std::size_t e = 0; e < clipper.size() && !out.empty(); ++e) {
        const Vec2& a = clipper[e];
        const Vec2& b = clipper[(e + 1) % clipper.size()];
        const Vec2 edge = b - a;
        auto side = [&](const Vec2& p) { return cross(edge, p - a); };
        Polygon in = std::move(out);
        out.clear();
        for (std::size_t i = 0; i < in.size(); ++i) {
            const Vec2& p = in[i];
            const Vec2& q = in[(i + 1) % in.size()];
            const double sp = side(p), sq = side(q);
            if (sp >= 0) out.push_back(p);
            if ((sp >= 0) != (sq >= 0)) out.push_back(p + (q - p) * (sp / (sp - sq)));
        }
    }
    if (out.size() < 3) out.clear();
    return out;
}

ConvexWindow::ConvexWindow(Polygon vertices) : vertices_(std::move(vertices)) {
    if (vertices_.size() < 3) throw ValidationError("a window needs at least 3 vertices");
    for (const auto& v : vertices_)
        if (!std::isfinite(v.x()) || !std::isfinite(v.y())) throw ValidationError("window vertex is not finite");
    area_ = signed_area(vertices_);
    if (!(area_ > 0.0)) throw ValidationError(fmt::format("window has non-positive area {}", area_));
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e1 = vertices_[(i + 1) % n] - vertices_[i];
        const Vec2 e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
        if (!(cross(e1, e2) > 0.0))
            throw ValidationError(fmt::format("window is not strictly convex at vertex {}", (i + 1) % n));
    }
    lo_ = hi_ = vertices_.front();
    for (const auto& v : vertices_) {
        lo_ = lo_.cwiseMin(v);
        hi_ = hi_.cwiseMax(v);
    }
}

ConvexWindow ConvexWindow::regular_dodecagon(double rho, Vec2 centre) {
    if (!(rho > 0.0)) throw ValidationError(fmt::format("dodecagon radius must be positive, got {}", rho));
    Polygon v;
    for (int k = 0; k < 12; ++k) {
        const double angle = k * std::numbers::pi / 6.0;
        v.push_back(centre + rho * Vec2(std::cos(angle), std::sin(angle)));
    }
    ConvexWindow w(std::move(v));
    w.dodecagon_ = DodecagonParams{rho, centre};
    return w;
}

double ConvexWindow::depth(const Vec2& p) const {
    double best = INFINITY;
    const std::size_t n = vertices_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 edge = vertices_[(i + 1) % n] - vertices_[i];
        best = std::min(best, cross(edge, p - vertices_[i]) / edge.norm());
    }
    return best;
}

ConvexWindow ConvexWindow::translated(const Vec2& v) const {
    Polygon moved = vertices_;
    for (auto& p : moved) p += v;
    ConvexWindow w(std::move(moved));
    if (dodecagon_) w.dodecagon_ = DodecagonParams{dodecagon_->rho, dodecagon_->centre + v};
    return w;
}

Location window_contains(const ConvexWindow& w, const Vec2& p, double eps) {
    const double d = w.depth(p);
    if (std::abs(d) <= eps) return Location::BoundaryNear;
    return d > 0 ? Location::Inside : Location::Outside;
}

double window_intersection_area(const ConvexWindow& w, std::span<const Vec2> shifts) {
    if (shifts.size() > 8) throw ValidationError(fmt::format("at most 8 shifts supported, got {}", shifts.size()));
    Polygon region = w.vertices();
    for (const auto& v : shifts) {
        Polygon translate = w.vertices();
        for (auto& p : translate) p -= v;
        region = clip_convex(region, translate);
        if (region.empty()) return 0.0;
    }
    return std::max(0.0, signed_area(region));
}

}  // namespace wmc::cutproject
