#include "wmc/patch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "wmc/errors.hpp"
#include "wmc/parallel.hpp"

namespace wmc::cutproject {

ColoredPatch::ColoredPatch(double R, double margin, ConvexWindow window, std::vector<PatchPoint> points)
    : R_(R), margin_(margin), window_(std::move(window)), points_(std::move(points)) {
    if (!(R > 0.0) || !(margin >= 0.0))
        throw ValidationError(fmt::format("patch needs R > 0 and margin >= 0 (got {}, {})", R, margin));
    index_.reserve(points_.size() * 2);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (color_of(p.lattice) != p.colour)
            throw ValidationError(fmt::format("point {} has colour {}, expected {}", p.lattice.str(), p.colour,
                                              color_of(p.lattice)));
        if (!(window_->depth(p.internal) > 0.0))
            throw ValidationError("point " + p.lattice.str() + " has its internal image outside the window");
        if (!index_.emplace(pack(p.lattice), static_cast<std::uint32_t>(i)).second)
            throw ValidationError("duplicate lattice point " + p.lattice.str());
    }
}

const PatchPoint* ColoredPatch::find(const LatticePoint4& p) const {
    for (int v : p.d)
        if (v <= -32768 || v >= 32768) return nullptr;
    auto it = index_.find(pack(p));
    return it == index_.end() ? nullptr : &points_[it->second];
}

std::size_t ColoredPatch::core_count() const {
    return static_cast<std::size_t>(std::count_if(points_.begin(), points_.end(), [&](const auto& p) { return in_core(p); }));
}

namespace {

struct Interval {
    double lo = 0.0, hi = 0.0;
};

// Range of row . (p, q) for p in the physical box and q in the window's bounding box.
Interval coordinate_range(const Eigen::Matrix4d& inverse, int row, double half_width, const Vec2& qlo, const Vec2& qhi) {
    Interval out;
    for (int k = 0; k < 2; ++k) {
        const double a = inverse(row, k);
        out.lo -= std::abs(a) * half_width;
        out.hi += std::abs(a) * half_width;
    }
    for (int k = 0; k < 2; ++k) {
        const double a = inverse(row, 2 + k);
        const double x0 = a * qlo(k), x1 = a * qhi(k);
        out.lo += std::min(x0, x1);
        out.hi += std::max(x0, x1);
    }
    return out;
}

int ceil_to_parity(double x, int parity) {
    int v = static_cast<int>(std::ceil(x));
    if (((v % 2) + 2) % 2 != parity) ++v;
    return v;
}

}  // namespace

std::vector<LatticePoint4> enumerate_lattice(const SchemeEmbedding& emb, const ConvexWindow& w, double half_width,
                                             bool audit, unsigned threads, std::uint64_t* candidates) {
    if (!(half_width > 0.0)) throw ValidationError("enumeration half-width must be positive");
    // Doubled coordinates d = 2 x, x = M^T (p, q).
    const Eigen::Matrix4d inverse = emb.stacked().transpose();
    std::array<int, 4> dlo{}, dhi{};
    for (int i = 0; i < 4; ++i) {
        const Interval r = coordinate_range(inverse, i, half_width, w.min_corner(), w.max_corner());
        dlo[i] = static_cast<int>(std::floor(2.0 * r.lo)) - 1;
        dhi[i] = static_cast<int>(std::ceil(2.0 * r.hi)) + 1;
        if (dlo[i] <= -32768 || dhi[i] >= 32768)
            throw ResourceError(fmt::format("enumeration box for half-width {} exceeds the index range", half_width));
    }

    // Loop over two free coordinates and solve the internal constraint for the
    // other two; pick the pair whose internal 2x2 block is best conditioned.
    int fa = 0, fb = 1, sa = 2, sb = 3;
    double best = -1.0;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            const double det = std::abs(emb.internal(0, a) * emb.internal(1, b) - emb.internal(0, b) * emb.internal(1, a));
            if (det > best) {
                best = det;
                sa = a;
                sb = b;
            }
        }
    {
        std::array<int, 2> free{};
        int k = 0;
        for (int i = 0; i < 4; ++i)
            if (i != sa && i != sb) free[k++] = i;
        fa = free[0];
        fb = free[1];
    }
    Eigen::Matrix2d block;
    block << emb.internal(0, sa), emb.internal(0, sb), emb.internal(1, sa), emb.internal(1, sb);
    const Eigen::Matrix2d block_inv = block.inverse();
    Eigen::Matrix2d free_block;
    free_block << emb.internal(0, fa), emb.internal(0, fb), emb.internal(1, fa), emb.internal(1, fb);

    // Window vertices pulled back through the solved block (in actual coordinates).
    const Polygon& verts = w.vertices();

    const std::size_t span = static_cast<std::size_t>(dhi[fa] - dlo[fa] + 1);
    const std::size_t chunks = chunk_count(span, threads);
    std::vector<std::vector<LatticePoint4>> found(chunks);
    std::vector<std::uint64_t> examined(chunks, 0);
    std::vector<std::string> audit_failures(chunks);

    parallel_chunks(span, threads, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        auto& out = found[chunk];
        for (std::size_t step = lo; step < hi; ++step) {
            const int da = dlo[fa] + static_cast<int>(step);
            const int parity = ((da % 2) + 2) % 2;
            for (int db = ceil_to_parity(dlo[fb], parity); db <= dhi[fb]; db += 2) {
                const Vec2 q0 = free_block * Vec2(0.5 * da, 0.5 * db);
                Vec2 slo(INFINITY, INFINITY), shi(-INFINITY, -INFINITY);
                for (const auto& v : verts) {
                    const Vec2 x = block_inv * (v - q0);
                    slo = slo.cwiseMin(x);
                    shi = shi.cwiseMax(x);
                }
                const int lo_a = std::max(dlo[sa], ceil_to_parity(2.0 * slo.x() - 1e-9, parity));
                const int hi_a = std::min(dhi[sa], static_cast<int>(std::floor(2.0 * shi.x() + 1e-9)));
                const int lo_b = std::max(dlo[sb], ceil_to_parity(2.0 * slo.y() - 1e-9, parity));
                const int hi_b = std::min(dhi[sb], static_cast<int>(std::floor(2.0 * shi.y() + 1e-9)));
                for (int d1 = lo_a; d1 <= hi_a; d1 += 2) {
                    for (int d2 = lo_b; d2 <= hi_b; d2 += 2) {
                        LatticePoint4 p;
                        p.d[fa] = da;
                        p.d[fb] = db;
                        p.d[sa] = d1;
                        p.d[sb] = d2;
                        ++examined[chunk];
                        const Vec4 x = p.coords();
                        const Vec2 phys = emb.phys * x;
                        if (std::abs(phys.x()) > half_width || std::abs(phys.y()) > half_width) continue;
                        const Location loc = window_contains(w, emb.internal * x);
                        if (loc == Location::BoundaryNear) {
                            if (audit && audit_failures[chunk].empty())
                                audit_failures[chunk] = p.str();
                            continue;
                        }
                        if (loc == Location::Inside) out.push_back(p);
                    }
                }
            }
        }
    });

    for (const auto& failure : audit_failures)
        if (!failure.empty())
            throw GenericityError("star point of " + failure +
                                  " lies within 1e-9 of the window boundary; re-shift tau");
    std::vector<LatticePoint4> all;
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < chunks; ++c) {
        all.insert(all.end(), found[c].begin(), found[c].end());
        total += examined[c];
    }
    std::sort(all.begin(), all.end());
    if (candidates) *candidates = total;
    return all;
}

ColoredPatch enumerate_patch(const SchemeEmbedding& emb, const ConvexWindow& w, double R, double margin,
                             unsigned threads) {
    if (!(R > 0.0) || !(margin > 0.0))
        throw ValidationError(fmt::format("enumerate_patch needs R > 0 and margin > 0 (got {}, {})", R, margin));
    std::uint64_t candidates = 0;
    const auto lattice = enumerate_lattice(emb, w, R + margin, true, threads, &candidates);
    std::vector<PatchPoint> points;
    points.reserve(lattice.size());
    for (const auto& p : lattice) points.push_back({p, emb.physical_of(p), emb.internal_of(p), color_of(p)});
    ColoredPatch patch(R, margin, w, std::move(points));
    patch.candidates = candidates;
    return patch;
}

Census color_census(const ColoredPatch& patch) {
    Census c{};
    for (const auto& p : patch.points()) ++c.at(static_cast<std::size_t>(p.colour));
    return c;
}

}  // namespace wmc::cutproject
