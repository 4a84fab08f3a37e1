#include "wmc/stochastic.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "wmc/errors.hpp"
#include "wmc/parallel.hpp"

namespace wmc::stochastic {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

void ThinningConfig::validate() const {
    for (std::size_t j = 0; j < p.size(); ++j)
        if (!(p[j] >= 0.0 && p[j] <= 1.0))
            throw ValidationError(fmt::format("probability p_{} = {} is outside [0, 1]", j, p[j]));
    if (!(divisor > 0.0)) throw ValidationError("rescaling divisor must be positive");
}

ThinningConfig ThinningConfig::from_weights(const cyclic::CoefficientVector& c, std::uint64_t seed) {
    if (c.N != 6) throw ValidationError(fmt::format("thinning needs N = 6 weights, got N = {}", c.N));
    Rational top = 0;
    for (const auto& w : c.c) {
        if (w < 0) throw ValidationError("thinning weights must be non-negative");
        top = std::max(top, w);
    }
    if (top == 0) throw ValidationError("thinning weights are all zero");
    ThinningConfig cfg;
    cfg.divisor = top.get_d();
    for (std::size_t j = 0; j < 6; ++j) cfg.p[j] = Rational(c.c[j] / top).get_d();
    cfg.seed = seed;
    return cfg;
}

double site_uniform(std::uint64_t seed, const LatticePoint4& p) {
    std::uint64_t h = splitmix64(seed);
    for (int v : p.d) h = splitmix64(h ^ static_cast<std::uint32_t>(v));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Realization thin(const ColoredPatch& patch, const ThinningConfig& cfg, unsigned threads) {
    cfg.validate();
    Realization real;
    real.config = cfg;
    const auto& points = patch.points();
    real.kept.assign(points.size(), 0);
    parallel_chunks(points.size(), threads, [&](std::size_t, std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i)
            real.kept[i] = site_uniform(cfg.seed, points[i].lattice) < cfg.p[points[i].colour] ? 1 : 0;
    });
    real.kept_count = static_cast<std::size_t>(std::count(real.kept.begin(), real.kept.end(), 1));
    return real;
}

std::array<std::size_t, 6> kept_census(const ColoredPatch& patch, const Realization& real) {
    std::array<std::size_t, 6> c{};
    for (std::size_t i = 0; i < patch.size(); ++i)
        if (real.kept[i]) ++c[patch.points()[i].colour];
    return c;
}

std::array<std::size_t, 6> kept_core_census(const ColoredPatch& patch, const Realization& real) {
    std::array<std::size_t, 6> c{};
    for (std::size_t i = 0; i < patch.size(); ++i)
        if (real.kept[i] && patch.in_core(patch.points()[i])) ++c[patch.points()[i].colour];
    return c;
}

Estimate pair_statistic(const SchemeEmbedding& emb, const ColoredPatch& patch, const Realization& real,
                        const LatticePoint4& z) {
    if (real.kept.size() != patch.size()) throw ValidationError("realization does not belong to this patch");
    if (!cutproject::lattice_contains(z)) throw ValidationError("difference vector " + z.str() + " is not a lattice point");
    const double length = emb.physical_of(z).norm();
    if (length > 2.0 * std::sqrt(2.0) * (patch.radius() + patch.margin())) return {0.0, 0.0, 0};
    if (length > patch.margin())
        throw ValidationError(fmt::format("patch margin {} does not cover |z| = {}", patch.margin(), length));
    const auto& points = patch.points();
    const PatchPoint* base = points.data();
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!real.kept[i] || !patch.in_core(points[i])) continue;
        const auto* y = patch.find(points[i].lattice + z);
        if (y && real.kept[static_cast<std::size_t>(y - base)]) ++count;
    }
    const double area = patch.core_area();
    return {static_cast<double>(count) / area, std::sqrt(static_cast<double>(count)) / area, count};
}

double expected_pair_statistic(const SchemeEmbedding& emb, const ColoredPatch& patch, const ThinningConfig& cfg,
                               const LatticePoint4& z) {
    cfg.validate();
    const std::array<LatticePoint4, 1> tuple{z};
    const auto counts = correlation::count_patterns(emb, patch, tuple);
    const bool self = z == LatticePoint4{};
    double total = 0.0;
    for (int k0 = 0; k0 < 6; ++k0)
        for (int k1 = 0; k1 < 6; ++k1) {
            const std::array<int, 2> colours{k0, k1};
            const auto k = counts.at(colours);
            if (k == 0) continue;
            total += static_cast<double>(k) * (self ? cfg.p[k0] : cfg.p[k0] * cfg.p[k1]);
        }
    return total / patch.core_area();
}

std::vector<PeriodogramSample> periodogram(const ColoredPatch& patch, const Realization& real, double k_max,
                                           int steps) {
    if (steps < 1 || !(k_max > 0.0)) throw ValidationError("periodogram needs steps >= 1 and k_max > 0");
    std::vector<const PatchPoint*> pts;
    for (std::size_t i = 0; i < patch.size(); ++i)
        if (real.kept[i] && patch.in_core(patch.points()[i])) pts.push_back(&patch.points()[i]);
    std::vector<PeriodogramSample> out;
    for (int a = -steps; a <= steps; ++a)
        for (int b = -steps; b <= steps; ++b) {
            const double kx = k_max * a / steps, ky = k_max * b / steps;
            double re = 0.0, im = 0.0;
            for (const auto* p : pts) {
                const double phase = -(kx * p->phys.x() + ky * p->phys.y());
                re += std::cos(phase);
                im += std::sin(phase);
            }
            const double norm = pts.empty() ? 0.0 : (re * re + im * im) / static_cast<double>(pts.size());
            out.push_back({kx, ky, norm});
        }
    return out;
}

}  // namespace wmc::stochastic
