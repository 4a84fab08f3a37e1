#include "wmc/lattice.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "wmc/errors.hpp"

namespace wmc::cutproject {

std::string LatticePoint4::str() const { return fmt::format("({},{},{},{})/2", d[0], d[1], d[2], d[3]); }

bool lattice_contains(const LatticePoint4& p) {
    const int parity = p.d[0] & 1;
    return (p.d[1] & 1) == parity && (p.d[2] & 1) == parity && (p.d[3] & 1) == parity;
}

std::uint64_t pack(const LatticePoint4& p) {
    std::uint64_t key = 0;
    for (int i = 0; i < 4; ++i) {
        if (p.d[i] <= -32768 || p.d[i] >= 32768)
            throw ResourceError("lattice coordinate " + std::to_string(p.d[i]) + " exceeds the 16-bit index range");
        key |= static_cast<std::uint64_t>(static_cast<std::uint16_t>(static_cast<std::int16_t>(p.d[i]))) << (16 * i);
    }
    return key;
}

int color_of(const LatticePoint4& p) {
    if (!lattice_contains(p)) throw ValidationError("not an F4 lattice point: " + p.str());
    const int t = p.d[0] & 1;
    const long doubled_sum = static_cast<long>(p.d[0]) + p.d[1] + p.d[2] + p.d[3];
    const int s = static_cast<int>(((doubled_sum / 2) % 3 + 3) % 3);
    return (3 * t + 4 * s) % 6;
}

namespace {

using Root = std::array<Rational, 4>;

RationalMatrix4 identity() {
    RationalMatrix4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = (i == j) ? 1 : 0;
    return m;
}

RationalMatrix4 multiply(const RationalMatrix4& a, const RationalMatrix4& b) {
    RationalMatrix4 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Rational s = 0;
            for (int k = 0; k < 4; ++k) s += a[i][k] * b[k][j];
            out[i][j] = s;
        }
    return out;
}

// s(x) = x - 2 (x.a)/(a.a) a
RationalMatrix4 reflection(const Root& a) {
    Rational norm = 0;
    for (const auto& v : a) norm += v * v;
    RationalMatrix4 m = identity();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] -= 2 * a[i] * a[j] / norm;
    return m;
}

// Exact image of doubled coordinates; nullopt-like failure reported via flag.
bool apply_exact(const RationalMatrix4& m, const LatticePoint4& p, LatticePoint4& out) {
    for (int i = 0; i < 4; ++i) {
        Rational s = 0;
        for (int j = 0; j < 4; ++j) s += m[i][j] * p.d[j];
        if (s.get_den() != 1 || !s.get_num().fits_sint_p()) return false;
        out.d[i] = static_cast<int>(s.get_num().get_si());
    }
    return true;
}

// Orthonormal basis (u, v) of an invariant plane with projector P, oriented so
// that C u = cos(theta) u + sin(theta) v.
Eigen::Matrix<double, 2, 4> plane_basis(const Eigen::Matrix4d& projector, const Eigen::Matrix4d& c, double theta) {
    // Project the first standard basis vector that has a usable shadow.
    Vec4 u = Vec4::Zero();
    for (int i = 0; i < 4; ++i) {
        Vec4 e = Vec4::Unit(i);
        Vec4 cand = projector * e;
        if (cand.norm() > 0.1) {
            u = cand.normalized();
            break;
        }
    }
    Vec4 v = ((c * u) - std::cos(theta) * u) / std::sin(theta);
    v = (v - v.dot(u) * u).normalized();
    Eigen::Matrix<double, 2, 4> basis;
    basis.row(0) = u.transpose();
    basis.row(1) = v.transpose();
    return basis;
}

}  // namespace

RationalMatrix4 coxeter_element() {
    const Rational h(1, 2);
    const std::array<Root, 4> simple{{
        {0, 1, -1, 0},
        {0, 0, 1, -1},
        {0, 0, 0, 1},
        {h, -h, -h, -h},
    }};
    RationalMatrix4 c = identity();
    for (const auto& a : simple) c = multiply(c, reflection(a));
    return c;
}

int matrix_order(const RationalMatrix4& m, int limit) {
    const RationalMatrix4 id = identity();
    RationalMatrix4 power = m;
    for (int k = 1; k <= limit; ++k) {
        if (power == id) return k;
        power = multiply(power, m);
    }
    return 0;
}

LatticePoint4 SchemeEmbedding::apply_coxeter(const LatticePoint4& p) const {
    LatticePoint4 out;
    if (!apply_exact(coxeter, p, out)) throw std::logic_error("Coxeter image not integral for " + p.str());
    return out;
}

Eigen::Matrix4d SchemeEmbedding::stacked() const {
    Eigen::Matrix4d m;
    m.topRows<2>() = phys;
    m.bottomRows<2>() = internal;
    return m;
}

SchemeEmbedding build_embedding() {
    SchemeEmbedding emb;
    emb.coxeter = coxeter_element();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) emb.coxeter_d(i, j) = emb.coxeter[i][j].get_d();

    emb.residuals.coxeter_order = matrix_order(emb.coxeter);
    if (emb.residuals.coxeter_order != 12)
        throw std::logic_error(fmt::format("Coxeter element has order {}, expected 12", emb.residuals.coxeter_order));

    // Basis of the lattice: e1, e2, e3 and (1,1,1,1)/2, in doubled coordinates.
    const std::array<LatticePoint4, 4> basis{{{{2, 0, 0, 0}}, {{0, 2, 0, 0}}, {{0, 0, 2, 0}}, {{1, 1, 1, 1}}}};
    bool preserved = true;
    for (const auto& b : basis) {
        LatticePoint4 img;
        if (!apply_exact(emb.coxeter, b, img) || !lattice_contains(img)) preserved = false;
    }
    emb.residuals.lattice_preserved = preserved;
    if (!preserved) throw std::logic_error("Coxeter element does not preserve the F4 lattice");

    // C is orthogonal, so C + C^T acts as 2 cos(theta) on each invariant plane:
    // +sqrt(3) on the pi/6 plane, -sqrt(3) on the 5 pi/6 plane.
    const Eigen::Matrix4d sym = emb.coxeter_d + emb.coxeter_d.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(sym);
    const Vec4 ev = solver.eigenvalues();
    const double root3 = std::numbers::sqrt3;
    if (std::abs(ev(0) + root3) > 1e-9 || std::abs(ev(1) + root3) > 1e-9 || std::abs(ev(2) - root3) > 1e-9 ||
        std::abs(ev(3) - root3) > 1e-9)
        throw std::logic_error(fmt::format("eigenplanes do not separate: eigenvalues of C + C^T = {} {} {} {}",
                                           ev(0), ev(1), ev(2), ev(3)));
    const Eigen::Matrix4d vecs = solver.eigenvectors();
    const Eigen::Matrix4d proj_internal = vecs.leftCols<2>() * vecs.leftCols<2>().transpose();
    const Eigen::Matrix4d proj_phys = vecs.rightCols<2>() * vecs.rightCols<2>().transpose();

    emb.phys_angle = std::numbers::pi / 6.0;
    emb.internal_angle = 5.0 * std::numbers::pi / 6.0;
    emb.phys = plane_basis(proj_phys, emb.coxeter_d, emb.phys_angle);
    emb.internal = plane_basis(proj_internal, emb.coxeter_d, emb.internal_angle);

    const Eigen::Matrix4d m = emb.stacked();
    emb.residuals.orthogonality = (m * m.transpose() - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
    emb.residuals.equivariance_phys =
        (emb.phys * emb.coxeter_d - rotation(emb.phys_angle) * emb.phys).cwiseAbs().maxCoeff();
    emb.residuals.equivariance_internal =
        (emb.internal * emb.coxeter_d - rotation(emb.internal_angle) * emb.internal).cwiseAbs().maxCoeff();
    return emb;
}

}  // namespace wmc::cutproject
