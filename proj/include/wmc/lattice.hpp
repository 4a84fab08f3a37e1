#pragma once

// The F4 root lattice in doubled coordinates, its Coxeter automorphism, the
// physical/internal projections and the Z/6Z colour homomorphism.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include <Eigen/Dense>

#include "wmc/exact.hpp"

namespace wmc::cutproject {

using Vec2 = Eigen::Vector2d;
using Vec4 = Eigen::Vector4d;

/// A point of R^4 stored as twice its coordinates. The F4 lattice consists of
/// the quadruples whose doubled coordinates are all even or all odd.
struct LatticePoint4 {
    std::array<int, 4> d{0, 0, 0, 0};

    /// Actual coordinates d / 2.
    Vec4 coords() const { return Vec4(d[0], d[1], d[2], d[3]) * 0.5; }
    std::string str() const;

    friend LatticePoint4 operator+(const LatticePoint4& a, const LatticePoint4& b) {
        return {{a.d[0] + b.d[0], a.d[1] + b.d[1], a.d[2] + b.d[2], a.d[3] + b.d[3]}};
    }
    friend LatticePoint4 operator-(const LatticePoint4& a, const LatticePoint4& b) {
        return {{a.d[0] - b.d[0], a.d[1] - b.d[1], a.d[2] - b.d[2], a.d[3] - b.d[3]}};
    }
    friend LatticePoint4 operator-(const LatticePoint4& a) { return {{-a.d[0], -a.d[1], -a.d[2], -a.d[3]}}; }
    friend auto operator<=>(const LatticePoint4&, const LatticePoint4&) = default;
};

/// All doubled coordinates even, or all odd.
bool lattice_contains(const LatticePoint4& p);

/// Packs a point with |d_i| < 32768 into 64 bits; throws ResourceError otherwise.
std::uint64_t pack(const LatticePoint4& p);

/// alpha(x) = (3t + 4s) mod 6 with t the parity class (0 integral, 1 half-integral)
/// and s the coordinate sum of x mod 3. The kernel is the index-6 sublattice of
/// integral points whose coordinate sum is divisible by 3. Throws
/// ValidationError for non-members.
int color_of(const LatticePoint4& p);

using RationalMatrix4 = std::array<std::array<Rational, 4>, 4>;

struct EmbeddingResiduals {
    int coxeter_order = 0;        // exact multiplicative order of C
    bool lattice_preserved = false;
    double orthogonality = 0.0;   // max |M M^T - I| for M = [phys; internal]
    double equivariance_phys = 0.0;
    double equivariance_internal = 0.0;
};

/// The cut-and-project data: Coxeter element C of F4 (exact), and orthonormal
/// projections onto its two invariant planes. phys * C = R(pi/6) * phys and
/// internal * C = R(5 pi/6) * internal, both acting on actual coordinates.
struct SchemeEmbedding {
    RationalMatrix4 coxeter;
    Eigen::Matrix4d coxeter_d;
    Eigen::Matrix<double, 2, 4> phys;
    Eigen::Matrix<double, 2, 4> internal;
    double phys_angle = 0.0;
    double internal_angle = 0.0;
    EmbeddingResiduals residuals;

    Vec2 physical_of(const LatticePoint4& p) const { return phys * p.coords(); }
    Vec2 internal_of(const LatticePoint4& p) const { return internal * p.coords(); }
    /// C applied in exact integer arithmetic.
    LatticePoint4 apply_coxeter(const LatticePoint4& p) const;
    /// [phys; internal], orthogonal.
    Eigen::Matrix4d stacked() const;
};

/// Product of the reflections in the simple roots e2-e3, e3-e4, e4,
/// (e1-e2-e3-e4)/2.
RationalMatrix4 coxeter_element();

/// Exact multiplicative order of m, or 0 if it exceeds limit.
int matrix_order(const RationalMatrix4& m, int limit = 64);

/// Builds and checks the embedding; throws std::logic_error with diagnostics
/// if any exact check fails or the eigenplanes do not separate.
SchemeEmbedding build_embedding();

inline Eigen::Matrix2d rotation(double angle) {
    Eigen::Matrix2d r;
    r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
    return r;
}

}  // namespace wmc::cutproject

template <>
struct std::hash<wmc::cutproject::LatticePoint4> {
    std::size_t operator()(const wmc::cutproject::LatticePoint4& p) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (int v : p.d) {
            h ^= static_cast<std::uint32_t>(v);
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};
