#pragma once

// Independent Bernoulli selection of patch points with colour-dependent
// retention probabilities.

#include <array>
#include <cstdint>
#include <vector>

#include "wmc/correlation.hpp"

namespace wmc::stochastic {

using correlation::Estimate;
using cutproject::ColoredPatch;
using cutproject::LatticePoint4;
using cutproject::PatchPoint;
using cutproject::SchemeEmbedding;

struct ThinningConfig {
    std::array<double, 6> p{};
    /// Weights were divided by this to land in [0, 1]; 1 when p was given directly.
    double divisor = 1.0;
    std::uint64_t seed = 0;

    void validate() const;
    /// p_j = c_j / max_k c_k. Requires N = 6 and non-negative weights, not all zero.
    static ThinningConfig from_weights(const cyclic::CoefficientVector& c, std::uint64_t seed);
};

/// Uniform in [0, 1) determined by (seed, lattice point) alone.
double site_uniform(std::uint64_t seed, const LatticePoint4& p);

struct Realization {
    ThinningConfig config;
    std::vector<char> kept;  // one flag per patch point, in patch order
    std::size_t kept_count = 0;
};

/// Point i is kept iff site_uniform(seed, point) < p[colour].
Realization thin(const ColoredPatch& patch, const ThinningConfig& cfg, unsigned threads = 0);

/// Kept points per colour (whole patch).
std::array<std::size_t, 6> kept_census(const ColoredPatch& patch, const Realization& real);
/// Kept points per colour among core points.
std::array<std::size_t, 6> kept_core_census(const ColoredPatch& patch, const Realization& real);

/// Per-area count of core x with x and x + z both kept. For z = 0 this is the
/// kept core density.
Estimate pair_statistic(const SchemeEmbedding& emb, const ColoredPatch& patch, const Realization& real,
                        const LatticePoint4& z);

/// Expectation of pair_statistic given the patch: sum over colour pairs of
/// p_k0 p_k1 times the coloured pair frequency (p_k times the colour density
/// for z = 0).
double expected_pair_statistic(const SchemeEmbedding& emb, const ColoredPatch& patch, const ThinningConfig& cfg,
                               const LatticePoint4& z);

struct PeriodogramSample {
    double kx = 0.0, ky = 0.0, intensity = 0.0;
};

/// |sum_x exp(-i k.x)|^2 / count over kept core points on a (2 steps + 1)^2
/// grid of wave vectors in [-k_max, k_max]^2. Qualitative output only.
std::vector<PeriodogramSample> periodogram(const ColoredPatch& patch, const Realization& real, double k_max,
                                           int steps);

}  // namespace wmc::stochastic
