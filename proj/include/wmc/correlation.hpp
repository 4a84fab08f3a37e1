#pragma once

// Pattern frequencies and weighted correlation coefficients of coloured
// patches, measured by counting and predicted from window overlaps.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wmc/cyclic_comb.hpp"
#include "wmc/patch.hpp"

namespace wmc::correlation {

using cutproject::ColoredPatch;
using cutproject::ConvexWindow;
using cutproject::LatticePoint4;
using cutproject::SchemeEmbedding;
using cutproject::Vec2;

inline constexpr int kColours = 6;
inline constexpr int kMaxTupleLength = 5;

/// alpha(z_j) for each difference vector. Validates membership and 1 <= n <= 5.
std::vector<int> residues_of(std::span<const LatticePoint4> z);

/// Largest Euclidean physical length among the z_j.
double required_margin(const SchemeEmbedding& emb, std::span<const LatticePoint4> z);

/// Internal images z_j*.
std::vector<Vec2> internal_shifts(const SchemeEmbedding& emb, std::span<const LatticePoint4> z);

/// Area of W intersected with every -z_j* + W.
double area_term(const SchemeEmbedding& emb, const ConvexWindow& w, std::span<const LatticePoint4> z);

/// Counts of base points x in the core box, split by the colour tuple
/// (colour(x), colour(x+z_1), ..., colour(x+z_n)), over those x whose
/// translates are all in the patch.
struct PatternCounts {
    int n = 0;
    std::uint64_t base_points = 0;  // core points, regardless of translates
    std::uint64_t matches = 0;      // base points whose translates are all present
    std::vector<std::uint64_t> by_colours;  // 6^(n+1) bins, colour(x) most significant

    std::uint64_t at(std::span<const int> colours) const;
};

/// Throws ValidationError if the patch margin is smaller than required_margin.
PatternCounts count_patterns(const SchemeEmbedding& emb, const ColoredPatch& patch, std::span<const LatticePoint4> z,
                             unsigned threads = 0);

/// Number of core base points x with every x + z_j present (colours ignored).
std::uint64_t uncoloured_pattern_count(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                       std::span<const LatticePoint4> z);

struct Estimate {
    double value = 0.0;
    double sigma = 0.0;     // Poisson-style: sqrt(sum of squared contributions) / (2R)^2
    std::uint64_t count = 0;
};

/// Per-area count of base points with colour k(0) whose translates x + z_j
/// are present with colour k(j). colours has n + 1 entries in 0..5.
Estimate empirical_colored_frequency(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                     std::span<const LatticePoint4> z, std::span<const int> colours);

/// area(W cap ...) * card(A_k(0) cap (-r_j + A_k(j))) / N. colours index the
/// weighting's windows; N must be 6.
double analytic_colored_frequency(const SchemeEmbedding& emb, const ConvexWindow& w,
                                  const cyclic::CyclicWeighting& weighting, std::span<const LatticePoint4> z,
                                  std::span<const int> colours);

/// Sum over colour tuples of c_k(0) ... c_k(n) times the empirical coloured
/// frequency.
Estimate empirical_coefficient(const PatternCounts& counts, const cyclic::CoefficientVector& c, double core_area);
Estimate empirical_coefficient(const SchemeEmbedding& emb, const ColoredPatch& patch,
                               const cyclic::CoefficientVector& c, std::span<const LatticePoint4> z);

/// area(W cap ...) * M_n(r_1..r_n) / 6.
double analytic_coefficient(const SchemeEmbedding& emb, const ConvexWindow& w, const cyclic::CoefficientVector& c,
                            std::span<const LatticePoint4> z);

struct DistinguishingTuple {
    std::vector<int> residues;
    std::vector<LatticePoint4> z;
    double area = 0.0;
    double area_fraction = 0.0;
    Rational m_a, m_b;
    double coefficient_a = 0.0;
    double coefficient_b = 0.0;
    bool meets_floor = false;
    std::string warning;
};

inline constexpr double kAreaFloor = 0.10;

/// Picks, for each residue, a lattice vector with that colour, small internal
/// norm and physical length within the patch margin, maximizing the joint area
/// term. With distinct set the chosen vectors are pairwise different.
DistinguishingTuple find_distinguishing_tuple(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                              std::span<const int> residues, const cyclic::CoefficientVector& a,
                                              const cyclic::CoefficientVector& b, bool distinct = true);

/// Residue pattern among the n-tuples where the two weightings differ that is
/// best resolved by counting: maximizes |sum_k d_k| / sqrt(sum_k d_k^2) with
/// d_k the per-base-colour product difference; ties broken lexicographically.
std::optional<std::vector<int>> best_witness_residues(const cyclic::CoefficientVector& a,
                                                      const cyclic::CoefficientVector& b, int n);

/// Lattice vectors usable as difference vectors for this patch: nonzero,
/// physical length <= patch margin, internal norm < the window circumradius.
/// Sorted by internal norm, then lattice order.
std::vector<LatticePoint4> small_difference_vectors(const SchemeEmbedding& emb, const ColoredPatch& patch);

/// count random tuples of length n drawn from small_difference_vectors with a
/// positive joint area term. Deterministic in seed.
std::vector<std::vector<LatticePoint4>> random_small_tuples(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                                            int n, int count, std::uint64_t seed);

enum class Verdict { Agree, Separate, Inconclusive, Insufficient };
std::string to_string(Verdict v);

inline constexpr std::uint64_t kMinMatches = 100;
inline constexpr double kAgreeSigmas = 3.0;
inline constexpr double kSeparateSigmas = 5.0;

struct CorrelationRecord {
    int n = 0;
    std::vector<LatticePoint4> z;
    std::vector<int> residues;
    double area = 0.0;
    Rational m_a, m_b;
    double analytic_a = 0.0;
    double analytic_b = 0.0;
    Estimate empirical_a;
    Estimate empirical_b;
    double gap = 0.0;        // empirical_a - empirical_b
    double gap_sigma = 0.0;  // Poisson estimate for the paired difference
    double analytic_gap = 0.0;
    double predicted_a = 0.0;  // 2 * kappa * analytic_a
    double predicted_b = 0.0;
    double discrepancy_a = 0.0;  // (empirical - predicted) / predicted
    double discrepancy_b = 0.0;
    std::uint64_t matches = 0;
    Verdict verdict = Verdict::Inconclusive;
};

struct CorrelationReport {
    double R = 0.0;
    double margin = 0.0;
    std::uint64_t base_points = 0;
    double density = 0.0;
    double window_area = 0.0;
    /// density / (2 * area(W)); 1 for the F4 lattice with covolume 1/2.
    double kappa = 0.0;
    std::vector<CorrelationRecord> records;

    bool all_agree_up_to(int n) const;
    bool any_separate_at(int n) const;
    std::string table() const;
};

/// For each tuple and each n in [n_min, n_max] not exceeding its length, the
/// prefix z_1..z_n is evaluated under both weightings.
CorrelationReport correlation_compare(const SchemeEmbedding& emb, const ColoredPatch& patch,
                                      const cyclic::CoefficientVector& a, const cyclic::CoefficientVector& b,
                                      const std::vector<std::vector<LatticePoint4>>& tuples, int n_min, int n_max,
                                      unsigned threads = 0);

}  // namespace wmc::correlation
