#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "wmc/lattice.hpp"
#include "wmc/window.hpp"

namespace wmc::cutproject {

struct PatchPoint {
    LatticePoint4 lattice;
    Vec2 phys;
    Vec2 internal;
    int colour = 0;
};

/// Coloured model-set points whose physical image lies in the closed box of
/// half-width R + margin. Base points for counting are those strictly inside
/// the box of half-width R; the margin holds their translates.
class ColoredPatch {
public:
    ColoredPatch() = default;
    ColoredPatch(double R, double margin, ConvexWindow window, std::vector<PatchPoint> points);

    double radius() const noexcept { return R_; }
    double margin() const noexcept { return margin_; }
    const ConvexWindow& window() const { return *window_; }
    const std::vector<PatchPoint>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    /// Area of the counting box, (2R)^2.
    double core_area() const { return 4.0 * R_ * R_; }

    /// Constant-time lookup; nullptr when the lattice point is not in the patch.
    const PatchPoint* find(const LatticePoint4& p) const;
    bool in_core(const PatchPoint& p) const {
        return std::abs(p.phys.x()) < R_ && std::abs(p.phys.y()) < R_;
    }
    std::size_t core_count() const;

    /// Candidates examined during enumeration (diagnostic only).
    std::uint64_t candidates = 0;

private:
    double R_ = 0.0;
    double margin_ = 0.0;
    std::optional<ConvexWindow> window_;
    std::vector<PatchPoint> points_;
    std::unordered_map<std::uint64_t, std::uint32_t> index_;
};

/// Every lattice point x with |phys(x)|_inf <= half_width and internal(x)
/// strictly inside the window, sorted by doubled coordinates. With audit set,
/// a star point within kBoundaryEpsilon of the window boundary (for x in the
/// box) throws GenericityError.
std::vector<LatticePoint4> enumerate_lattice(const SchemeEmbedding& emb, const ConvexWindow& w, double half_width,
                                             bool audit, unsigned threads = 0, std::uint64_t* candidates = nullptr);

ColoredPatch enumerate_patch(const SchemeEmbedding& emb, const ConvexWindow& w, double R, double margin,
                             unsigned threads = 0);

using Census = std::array<std::size_t, 6>;

Census color_census(const ColoredPatch& patch);

}  // namespace wmc::cutproject
